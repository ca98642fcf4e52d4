#include "affine/signature.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

#include "affine/errors.hpp"

namespace affine {

AffineSignature AffineSignature::zero(std::size_t arity) {
    AffineSignature s;
    s.arity_ = arity;
    s.scalar_ = ExactScalar::zero();
    s.support_.a = F2Matrix(0, arity);
    s.support_.b = BitVec(0);
    s.phase_.diag.assign(arity, 0);
    s.phase_.cross = F2Matrix(arity, arity);
    return s;
}

AffineSignature AffineSignature::all_free(std::size_t arity) {
    return canonicalize(raw::RawSignature::free_of(arity));
}

AffineSignature AffineSignature::point(bool bit) {
    auto f = raw::RawSignature::free_of(1);
    BitVec r(1);
    r.set(0, true);
    f.add_constraint(std::move(r), bit);
    return canonicalize(std::move(f));
}

AffineSignature AffineSignature::equality() {
    auto f = raw::RawSignature::free_of(2);
    f.add_constraint(BitVec::from_string("11"), false);
    return canonicalize(std::move(f));
}

AffineSignature AffineSignature::identity_map(std::size_t n) {
    auto f = raw::RawSignature::free_of(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
        BitVec r(2 * n);
        r.set(q, true);
        r.set(2 * n - 1 - q, true);
        f.add_constraint(std::move(r), false);
    }
    return canonicalize(std::move(f));
}

AffineSignature AffineSignature::scaled(const ExactScalar& s) const {
    if (s.is_zero() || is_zero()) return zero(arity_);
    AffineSignature out = *this;
    out.scalar_ = scalar_ * s;
    return out;
}

AffineSignature AffineSignature::with_scalar_p(int p) const {
    AffineSignature out = *this;
    out.scalar_.set_p(p);
    return out;
}

raw::RawSignature AffineSignature::to_raw() const {
    raw::RawSignature f = raw::RawSignature::free_of(arity_);
    f.scalar = scalar_;
    for (std::size_t i = 0; i < support_.a.rows(); ++i)
        f.add_constraint(support_.a.row(i), support_.b.get(i));
    f.diag = phase_.diag;
    for (std::size_t j = 0; j < arity_; ++j) f.cross[j] = phase_.cross.row(j);
    return f;
}

AffineSignature AffineSignature::canonicalize(raw::RawSignature f) {
    const std::size_t k = f.arity;
    if (f.scalar.is_zero()) return zero(k);

    F2Matrix a(f.rows.size(), k);
    BitVec b(f.rows.size());
    for (std::size_t i = 0; i < f.rows.size(); ++i) {
        a.row(i) = f.rows[i];
        b.set(i, f.rhs[i] != 0);
    }
    auto sys = rref_system(std::move(a), std::move(b));
    if (!sys.feasible) return zero(k);

    f.rows.clear();
    f.rhs.clear();
    for (auto [r, c] : sys.pivots) {
        f.rows.push_back(sys.a.row(r));
        f.rhs.push_back(sys.b.get(r) ? 1 : 0);
    }

    // Rewrite the phase onto free variables. Pivot rows reference free
    // columns only, so one pass settles every pivot.
    for (std::size_t i = 0; i < sys.pivots.size(); ++i) {
        const std::size_t col = sys.pivots[i].second;
        if (f.diag[col] == 0 && !f.cross[col].any()) continue;
        BitVec expr = f.rows[i];
        expr.set(col, false);
        raw::substitute_phase(f, col, expr, f.rhs[i] != 0);
    }

    AffineSignature s;
    s.arity_ = k;
    s.scalar_ = f.scalar;
    s.support_.a = F2Matrix(f.rows.size(), k);
    s.support_.b = BitVec(f.rows.size());
    for (std::size_t i = 0; i < f.rows.size(); ++i) {
        s.support_.a.row(i) = std::move(f.rows[i]);
        s.support_.b.set(i, f.rhs[i] != 0);
    }
    for (auto [r, c] : sys.pivots) s.support_.pivots.push_back(c);
    s.phase_.diag = std::move(f.diag);
    s.phase_.cross = F2Matrix(k, k);
    for (std::size_t j = 0; j < k; ++j) s.phase_.cross.row(j) = std::move(f.cross[j]);
    return s;
}

AffineSignature from_linear_form(std::size_t arity, const ExactScalar& lambda,
                                 const F2Matrix& a, const BitVec& b,
                                 const std::vector<std::pair<BitVec, bool>>& alphas) {
    if (a.cols() != arity) throw std::invalid_argument("from_linear_form: constraint width mismatch");
    if (a.rows() != b.size()) throw std::invalid_argument("from_linear_form: rhs length mismatch");
    auto f = raw::RawSignature::free_of(arity);
    f.scalar = lambda;
    for (std::size_t i = 0; i < a.rows(); ++i) f.add_constraint(a.row(i), b.get(i));
    for (const auto& [vec, c] : alphas) {
        if (vec.size() != arity) throw std::invalid_argument("from_linear_form: alpha width mismatch");
        // <alpha, x> + c as a 0/1 value equals (sum x_u + c)^2 mod 4.
        raw::add_scaled_square(f, vec, 1);
        if (c) {
            for (std::size_t u = vec.first_set(); u != BitVec::npos; u = vec.first_set(u + 1))
                f.diag[u] = static_cast<uint8_t>((f.diag[u] + 2) & 3);
            f.scalar.mul_i_pow(1);
        }
    }
    return AffineSignature::canonicalize(std::move(f));
}

ExactScalar evaluate(const AffineSignature& f, const BitVec& x) {
    if (x.size() != f.arity()) throw std::invalid_argument("evaluate: arity mismatch");
    if (f.is_zero()) return ExactScalar::zero();
    const auto& sup = f.support();
    for (std::size_t i = 0; i < sup.a.rows(); ++i)
        if (BitVec::parity_and(sup.a.row(i), x) != sup.b.get(i)) return ExactScalar::zero();
    int q4 = 0;
    std::size_t pair_count = 0;
    for (std::size_t j = x.first_set(); j != BitVec::npos; j = x.first_set(j + 1)) {
        q4 += f.phase().diag[j];
        pair_count += BitVec::popcount_and(f.phase().cross.row(j), x);
    }
    q4 += static_cast<int>(pair_count & 2u);  // 2 * (pair_count/2 mod 2)
    ExactScalar out = f.scalar();
    out.mul_i_pow(q4);
    return out;
}

AffineSignature tensor(const AffineSignature& f, const AffineSignature& g) {
    return AffineSignature::canonicalize(raw::tensor(f.to_raw(), g.to_raw()));
}

AffineSignature permute(const AffineSignature& f, const std::vector<std::size_t>& sigma) {
    if (sigma.size() != f.arity()) throw std::invalid_argument("permute: bad permutation size");
    std::vector<bool> seen(sigma.size(), false);
    for (std::size_t v : sigma) {
        if (v >= sigma.size() || seen[v]) throw std::invalid_argument("permute: not a permutation");
        seen[v] = true;
    }
    return AffineSignature::canonicalize(raw::permute(f.to_raw(), sigma));
}

AffineSignature identify(const AffineSignature& f, std::size_t j, std::size_t l) {
    if (j == l || j >= f.arity() || l >= f.arity())
        throw std::invalid_argument("identify: bad variable pair");
    auto r = f.to_raw();
    raw::identify_inplace(r, j, l);
    return AffineSignature::canonicalize(std::move(r));
}

AffineSignature marginalize(const AffineSignature& f, std::size_t j) {
    if (j >= f.arity()) throw std::invalid_argument("marginalize: variable out of range");
    auto r = f.to_raw();
    raw::marginalize_inplace(r, j);
    return AffineSignature::canonicalize(std::move(r));
}

AffineSignature conjugate(const AffineSignature& f) {
    if (f.is_zero()) return f;
    auto r = f.to_raw();
    r.scalar = r.scalar.conj();
    for (auto& d : r.diag) d = static_cast<uint8_t>((4 - d) & 3);
    return AffineSignature::canonicalize(std::move(r));
}

AffineSignature adjoint(const AffineSignature& f) {
    if (f.arity() % 2 != 0) throw std::invalid_argument("adjoint: arity must be even");
    const std::size_t k = f.arity();
    std::vector<std::size_t> rev(k);
    for (std::size_t m = 0; m < k; ++m) rev[m] = k - 1 - m;
    return permute(conjugate(f), rev);
}

DenseMatrix signature_matrix(const AffineSignature& f, std::size_t max_n) {
    if (f.arity() % 2 != 0) throw std::invalid_argument("signature_matrix: arity must be even");
    const std::size_t n = f.arity() / 2;
    if (n > max_n) throw DenseLimitExceeded("signature_matrix: " + std::to_string(n) +
                                            " qubits exceeds dense limit " + std::to_string(max_n));
    DenseMatrix m(n);
    BitVec x(2 * n);
    for (std::size_t r = 0; r < m.dim; ++r) {
        for (std::size_t j = 0; j < n; ++j) x.set(j, (r >> (n - 1 - j)) & 1u);
        for (std::size_t c = 0; c < m.dim; ++c) {
            for (std::size_t j = 0; j < n; ++j) x.set(n + j, (c >> j) & 1u);
            m.at(r, c) = evaluate(f, x).to_complex();
        }
    }
    return m;
}

AffineSignature compose(const AffineSignature& f, const AffineSignature& g) {
    if (f.arity() != g.arity()) throw std::invalid_argument("compose: arity mismatch");
    if (f.arity() % 2 != 0) throw std::invalid_argument("compose: arity must be even");
    const std::size_t n = f.arity() / 2;
    auto t = raw::tensor(f.to_raw(), g.to_raw());
    // Link f's column variables to g's row variables, reversed pairing,
    // dropping from the top so lower indices stay stable.
    for (std::size_t k = n; k >= 1; --k)
        raw::identify_inplace(t, 2 * n + k - 1, 2 * n - k);
    for (std::size_t j = 2 * n; j-- > n;)
        raw::marginalize_inplace(t, j);
    return AffineSignature::canonicalize(std::move(t));
}

bool eq_mod_phase(const AffineSignature& f, const AffineSignature& g) {
    if (f.arity() != g.arity()) return false;
    if (f.is_zero() || g.is_zero()) return f.is_zero() == g.is_zero();
    return f.support() == g.support() && f.phase() == g.phase() &&
           f.scalar().p() == g.scalar().p();
}

bool check_canonical_invariants(const AffineSignature& f, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const std::size_t k = f.arity();
    const auto& sup = f.support();
    const auto& ph = f.phase();
    if (sup.a.cols() != k) return fail("support width != arity");
    if (sup.b.size() != sup.a.rows()) return fail("rhs length != row count");
    if (sup.pivots.size() != sup.a.rows()) return fail("pivot count != row count");
    if (ph.diag.size() != k) return fail("diag length != arity");
    if (ph.cross.rows() != k || ph.cross.cols() != k) return fail("cross shape != arity");
    for (std::size_t j = 0; j < k; ++j) {
        if (ph.diag[j] > 3) return fail("diag entry out of Z4");
        if (ph.cross.get(j, j)) return fail("cross diagonal set");
        for (std::size_t l = j + 1; l < k; ++l)
            if (ph.cross.get(j, l) != ph.cross.get(l, j)) return fail("cross not symmetric");
    }
    if (f.is_zero()) {
        if (sup.a.rows() != 0) return fail("zero signature with constraints");
        for (auto d : ph.diag) if (d) return fail("zero signature with phase");
        for (std::size_t j = 0; j < k; ++j)
            if (ph.cross.row(j).any()) return fail("zero signature with cross phase");
        if (f.scalar().p() != 0 || f.scalar().q() != 0) return fail("zero scalar not canonical");
        return true;
    }
    // The stored support must be exactly its own leftmost RREF.
    auto sys = rref_system(sup.a, sup.b);
    if (!sys.feasible) return fail("infeasible support stored");
    if (sys.rank != sup.a.rows()) return fail("support rows dependent");
    for (std::size_t i = 0; i < sup.a.rows(); ++i) {
        if (sys.a.row(i) != sup.a.row(i) || sys.b.get(i) != sup.b.get(i))
            return fail("support not in reduced echelon form");
        if (sys.pivots[i].second != sup.pivots[i]) return fail("pivot record mismatch");
    }
    for (std::size_t c : sup.pivots) {
        if (ph.diag[c] != 0) return fail("phase diag on pivot variable");
        if (ph.cross.row(c).any()) return fail("phase cross on pivot variable");
    }
    return true;
}

std::string print_signature(const AffineSignature& f) {
    std::ostringstream out;
    out << "sig k=" << f.arity() << " p=" << f.scalar().p() << " q=" << f.scalar().q()
        << " zero=" << (f.is_zero() ? 1 : 0) << "\n";
    const auto& sup = f.support();
    for (std::size_t i = 0; i < sup.a.rows(); ++i)
        out << "row " << sup.a.row(i).to_string() << " = " << (sup.b.get(i) ? 1 : 0) << "\n";
    out << "diag";
    for (auto d : f.phase().diag) out << ' ' << static_cast<int>(d);
    out << "\n";
    for (std::size_t j = 0; j < f.arity(); ++j)
        for (std::size_t l = j + 1; l < f.arity(); ++l)
            if (f.phase().cross.get(j, l)) out << "cross " << j << ' ' << l << "\n";
    return out.str();
}

AffineSignature parse_signature(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty signature record", 1, 1);
    ++line_no;
    std::istringstream head(line);
    std::string tag, kf, pf, qf, zf;
    head >> tag >> kf >> pf >> qf >> zf;
    auto field = [&](const std::string& s, const std::string& name) {
        if (s.rfind(name + "=", 0) != 0)
            throw ParseError("expected " + name + "=<value> in header", line_no, 1);
        return s.substr(name.size() + 1);
    };
    if (tag != "sig") throw ParseError("signature record must start with 'sig'", line_no, 1);
    std::size_t k = 0;
    int p = 0, q = 0, zero = 0;
    try {
        k = static_cast<std::size_t>(std::stoul(field(kf, "k")));
        p = std::stoi(field(pf, "p"));
        q = std::stoi(field(qf, "q"));
        zero = std::stoi(field(zf, "zero"));
    } catch (const std::logic_error&) {
        throw ParseError("malformed header field", line_no, 1);
    }
    if (q < 0 || q > 7) throw ParseError("q out of range 0..7", line_no, 1);
    if (zero != 0 && zero != 1) throw ParseError("zero flag must be 0 or 1", line_no, 1);

    auto f = raw::RawSignature::free_of(k);
    f.scalar = zero ? ExactScalar::zero() : ExactScalar::make(p, q);

    bool saw_diag = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "row") {
            std::string bits, eq;
            int b = -1;
            ls >> bits >> eq >> b;
            if (eq != "=" || (b != 0 && b != 1) || bits.size() != k)
                throw ParseError("malformed row line", line_no, 1);
            f.add_constraint(BitVec::from_string(bits), b == 1);
        } else if (kind == "diag") {
            for (std::size_t j = 0; j < k; ++j) {
                int d = -1;
                ls >> d;
                if (d < 0 || d > 3) throw ParseError("diag entry out of 0..3", line_no, 1);
                f.diag[j] = static_cast<uint8_t>(d);
            }
            saw_diag = true;
        } else if (kind == "cross") {
            std::size_t j = k, l = k;
            ls >> j >> l;
            if (j >= k || l >= k || j == l) throw ParseError("cross indices out of range", line_no, 1);
            f.set_cross(j, l, true);
        } else {
            throw ParseError("unknown signature line '" + kind + "'", line_no, 1);
        }
    }
    if (!saw_diag) throw ParseError("missing diag line", line_no + 1, 1);
    return AffineSignature::canonicalize(std::move(f));
}

}  // namespace affine
