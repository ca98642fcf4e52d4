#include "affine/raw_signature.hpp"

#include <cassert>
#include <stdexcept>

namespace affine::raw {

RawSignature RawSignature::free_of(std::size_t k) {
    RawSignature f;
    f.arity = k;
    f.diag.assign(k, 0);
    f.cross.assign(k, BitVec(k));
    return f;
}

void RawSignature::add_constraint(BitVec row, bool b) {
    assert(row.size() == arity);
    rows.push_back(std::move(row));
    rhs.push_back(b ? 1 : 0);
}

void RawSignature::set_cross(std::size_t j, std::size_t l, bool v) {
    assert(j != l);
    cross[j].set(l, v);
    cross[l].set(j, v);
}

void substitute_phase(RawSignature& f, std::size_t j, const BitVec& expr, bool c) {
    assert(!expr.get(j));
    const int d = f.diag[j];
    BitVec cj = f.cross[j];  // copy; row j is about to be cleared

    // Clear variable j's phase entries first.
    f.diag[j] = 0;
    for (std::size_t v = cj.first_set(); v != BitVec::npos; v = cj.first_set(v + 1))
        f.cross[v].set(j, false);
    f.cross[j] = BitVec(f.arity);

    // d * T^2 where T = sum_{u in expr} x_u + c.
    if (d != 0) {
        const uint8_t per_var = static_cast<uint8_t>((d + 2 * c * d) & 3);
        for (std::size_t u = expr.first_set(); u != BitVec::npos; u = expr.first_set(u + 1)) {
            f.diag[u] = static_cast<uint8_t>((f.diag[u] + per_var) & 3);
            if (d & 1) { f.cross[u] ^= expr; f.cross[u].set(u, false); }
        }
        if (c) f.scalar.mul_i_pow(d);
    }

    // 2 * T * C with C = old cross row j. Pairs hit by both loops (u and v
    // each in both sets) pick up coefficient 4 and correctly cancel.
    if (cj.any()) {
        if (c) {
            for (std::size_t v = cj.first_set(); v != BitVec::npos; v = cj.first_set(v + 1))
                f.diag[v] = static_cast<uint8_t>((f.diag[v] + 2) & 3);
        }
        for (std::size_t u = expr.first_set(); u != BitVec::npos; u = expr.first_set(u + 1)) {
            if (cj.get(u)) f.diag[u] = static_cast<uint8_t>((f.diag[u] + 2) & 3);
            f.cross[u] ^= cj;
            f.cross[u].set(u, false);
        }
        for (std::size_t v = cj.first_set(); v != BitVec::npos; v = cj.first_set(v + 1)) {
            f.cross[v] ^= expr;
            f.cross[v].set(v, false);
        }
    }
}

void add_scaled_square(RawSignature& f, const BitVec& mask, int m) {
    assert(m == 1 || m == 3);
    for (std::size_t u = mask.first_set(); u != BitVec::npos; u = mask.first_set(u + 1)) {
        f.diag[u] = static_cast<uint8_t>((f.diag[u] + m) & 3);
        f.cross[u] ^= mask;
        f.cross[u].set(u, false);
    }
}

void drop_variable(RawSignature& f, std::size_t j) {
    assert(f.diag[j] == 0 && !f.cross[j].any());
    for (auto& r : f.rows) { assert(!r.get(j)); r.erase_bit(j); }
    f.diag.erase(f.diag.begin() + static_cast<long>(j));
    f.cross.erase(f.cross.begin() + static_cast<long>(j));
    for (auto& c : f.cross) c.erase_bit(j);
    --f.arity;
}

RawSignature tensor(const RawSignature& f, const RawSignature& g) {
    const std::size_t k = f.arity + g.arity;
    RawSignature t = RawSignature::free_of(k);
    t.scalar = f.scalar * g.scalar;
    for (std::size_t i = 0; i < f.rows.size(); ++i) {
        BitVec r = f.rows[i];
        r.resize(k);
        t.add_constraint(std::move(r), f.rhs[i]);
    }
    for (std::size_t i = 0; i < g.rows.size(); ++i) {
        BitVec r(k);
        for (std::size_t c = g.rows[i].first_set(); c != BitVec::npos; c = g.rows[i].first_set(c + 1))
            r.set(f.arity + c, true);
        t.add_constraint(std::move(r), g.rhs[i]);
    }
    for (std::size_t j = 0; j < f.arity; ++j) {
        t.diag[j] = f.diag[j];
        BitVec c = f.cross[j];
        c.resize(k);
        t.cross[j] = std::move(c);
    }
    for (std::size_t j = 0; j < g.arity; ++j) {
        t.diag[f.arity + j] = g.diag[j];
        for (std::size_t v = g.cross[j].first_set(); v != BitVec::npos; v = g.cross[j].first_set(v + 1))
            t.cross[f.arity + j].set(f.arity + v, true);
    }
    return t;
}

RawSignature permute(const RawSignature& f, const std::vector<std::size_t>& sigma) {
    const std::size_t k = f.arity;
    RawSignature p = RawSignature::free_of(k);
    p.scalar = f.scalar;
    for (std::size_t i = 0; i < f.rows.size(); ++i) {
        BitVec r(k);
        for (std::size_t c = f.rows[i].first_set(); c != BitVec::npos; c = f.rows[i].first_set(c + 1))
            r.set(sigma[c], true);
        p.add_constraint(std::move(r), f.rhs[i]);
    }
    for (std::size_t j = 0; j < k; ++j) {
        p.diag[sigma[j]] = f.diag[j];
        for (std::size_t v = f.cross[j].first_set(); v != BitVec::npos; v = f.cross[j].first_set(v + 1))
            p.cross[sigma[j]].set(sigma[v], true);
    }
    return p;
}

void identify_inplace(RawSignature& f, std::size_t j, std::size_t l) {
    assert(j != l && j < f.arity && l < f.arity);
    for (auto& r : f.rows)
        if (r.get(j)) { r.set(j, false); r.flip(l); }
    BitVec expr(f.arity);
    expr.set(l, true);
    substitute_phase(f, j, expr, false);
    drop_variable(f, j);
}

void marginalize_inplace(RawSignature& f, std::size_t j) {
    assert(j < f.arity);

    // If any row involves x_j the sum collapses onto that row's solution.
    // Linearity in bit j means "some row has bit j" is equivalent to "the
    // row space has an equation involving x_j", so this test is valid on
    // unreduced rows.
    std::size_t pick = BitVec::npos;
    for (std::size_t i = 0; i < f.rows.size(); ++i)
        if (f.rows[i].get(j)) { pick = i; break; }

    if (pick != BitVec::npos) {
        BitVec expr = f.rows[pick];
        expr.set(j, false);
        const bool c = f.rhs[pick] != 0;
        for (std::size_t i = 0; i < f.rows.size(); ++i) {
            if (i == pick || !f.rows[i].get(j)) continue;
            f.rows[i] ^= f.rows[pick];
            f.rhs[i] ^= f.rhs[pick];
        }
        f.rows.erase(f.rows.begin() + static_cast<long>(pick));
        f.rhs.erase(f.rhs.begin() + static_cast<long>(pick));
        substitute_phase(f, j, expr, c);
        drop_variable(f, j);
        return;
    }

    // Free variable: partial sum 1 + i^{c + 2L} with c = diag[j] and
    // L = <cross row j, x> over F2.
    const int c = f.diag[j];
    BitVec ell = f.cross[j];
    f.diag[j] = 0;
    for (std::size_t v = ell.first_set(); v != BitVec::npos; v = ell.first_set(v + 1))
        f.cross[v].set(j, false);
    f.cross[j] = BitVec(f.arity);

    if (!ell.any()) {
        switch (c) {
            case 0: f.scalar.mul_pow2_half(2); break;
            case 2: f.scalar = ExactScalar::zero(); break;
            case 1: f.scalar.mul_pow2_half(1); f.scalar.mul_omega_pow(1); break;
            default: f.scalar.mul_pow2_half(1); f.scalar.mul_omega_pow(7); break;
        }
    } else if (c % 2 == 0) {
        f.scalar.mul_pow2_half(2);
        f.add_constraint(ell, c == 2);
    } else {
        f.scalar.mul_pow2_half(1);
        f.scalar.mul_omega_pow(c == 1 ? 1 : 7);
        add_scaled_square(f, ell, c == 1 ? 3 : 1);
    }
    drop_variable(f, j);
}

}  // namespace affine::raw
