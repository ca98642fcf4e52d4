#include "affine/pauli.hpp"

#include <sstream>
#include <stdexcept>

#include "affine/canonical.hpp"
#include "affine/errors.hpp"

namespace affine {

PauliOperator pauli_single(PauliKind kind, std::size_t j, std::size_t n) {
    if (j >= n) throw std::invalid_argument("pauli_single: qubit out of range");
    PauliOperator p = PauliOperator::identity(n);
    switch (kind) {
        case PauliKind::I: break;
        case PauliKind::X: p.e.set(j, true); break;
        case PauliKind::Z: p.r.set(j, true); break;
        case PauliKind::Y: p.e.set(j, true); p.r.set(j, true); p.c = 3; break;
    }
    return p;
}

PauliOperator pauli_mul(const PauliOperator& p1, const PauliOperator& p2) {
    if (p1.n != p2.n) throw std::invalid_argument("pauli_mul: size mismatch");
    PauliOperator out;
    out.n = p1.n;
    out.e = p1.e ^ p2.e;
    out.r = p1.r ^ p2.r;
    // (P1 P2)(x, x+e1+e2) = i^{c1} (-1)^{<r1,x>} i^{c2} (-1)^{<r2, x+e1>}.
    int c = p1.c + p2.c + 2 * static_cast<int>(BitVec::parity_and(p2.r, p1.e));
    out.c = static_cast<uint8_t>(c & 3);
    return out;
}

bool anticommutes(const PauliOperator& p1, const PauliOperator& p2) {
    return BitVec::parity_and(p1.e, p2.r) ^ BitVec::parity_and(p2.e, p1.r);
}

bool is_hermitian(const PauliOperator& p) {
    return (p.c & 1u) == (BitVec::parity_and(p.r, p.e) ? 1u : 0u);
}

std::optional<int> pauli_sign(const PauliOperator& p) {
    // Tensor word of letters carries i^{3 * #Y}; whatever is left must be ±1.
    const std::size_t ys = BitVec::popcount_and(p.e, p.r);
    const int rel = static_cast<int>((p.c + 4 - (3 * ys) % 4) % 4);
    if (rel == 0) return 1;
    if (rel == 2) return -1;
    return std::nullopt;
}

PauliKind pauli_letter(const PauliOperator& p, std::size_t q) {
    const bool ex = p.e.get(q), rz = p.r.get(q);
    if (ex && rz) return PauliKind::Y;
    if (ex) return PauliKind::X;
    if (rz) return PauliKind::Z;
    return PauliKind::I;
}

AffineSignature pauli_to_signature(const PauliOperator& p) {
    const std::size_t n = p.n;
    auto f = raw::RawSignature::free_of(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
        BitVec row(2 * n);
        row.set(q, true);
        row.set(2 * n - 1 - q, true);
        f.add_constraint(std::move(row), p.e.get(q));
        if (p.r.get(q)) f.diag[q] = 2;
    }
    f.scalar.mul_i_pow(p.c);
    return AffineSignature::canonicalize(std::move(f));
}

PauliRecognition recognize_pauli(const AffineSignature& f) {
    PauliRecognition rec;
    if (f.arity() % 2 != 0) { rec.reason = "arity is odd"; return rec; }
    if (f.is_zero()) { rec.reason = "zero signature"; return rec; }
    const std::size_t n = f.arity() / 2;

    NonsingularForm form;
    try {
        form = extract_form(f);
    } catch (const SingularDetected& err) {
        rec.reason = std::string("singular support: ") + err.what();
        return rec;
    }
    if (form.r != 0) {
        rec.reason = "support has free outputs (no y = x + e shape)";
        return rec;
    }
    if (form.a != F2Matrix::identity(n)) {
        rec.reason = "support map is not the identity (y = x + e shape required)";
        return rec;
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (form.c1.diag[j] & 1u) { rec.reason = "odd diagonal phase entry"; return rec; }
        if (form.c1.cross.row(j).any()) { rec.reason = "cross phase term present"; return rec; }
    }

    PauliOperator p = PauliOperator::identity(n);
    for (std::size_t q = 0; q < n; ++q) {
        p.e.set(q, form.b.get(q));
        p.r.set(q, form.c1.diag[q] == 2);
    }
    ExactScalar residual = f.scalar() / pauli_to_signature(p).scalar();
    // Fold whole powers of i from the residual into c, leaving q in {0, 1}.
    const int q8 = residual.q();
    const int fold = q8 / 2;
    p.c = static_cast<uint8_t>(fold & 3);
    rec.residual = ExactScalar::make(residual.p(), q8 & 1);
    rec.op = std::move(p);
    rec.ok = true;
    return rec;
}

AffineSignature conjugate_by(const AffineSignature& u, const PauliOperator& p) {
    if (u.arity() != 2 * p.n) throw std::invalid_argument("conjugate_by: size mismatch");
    auto verdict = check_unitary(u);
    if (verdict.status == UnitaryStatus::Singular)
        throw SingularDetected("conjugate_by: singular signature matrix");
    if (verdict.status != UnitaryStatus::Unitary)
        throw std::invalid_argument("conjugate_by: signature must be unitarized first");
    return compose(compose(u, pauli_to_signature(p)), adjoint(u));
}

CliffordTableau clifford_tableau_of(const AffineSignature& u) {
    if (u.arity() % 2 != 0) throw std::invalid_argument("clifford_tableau_of: arity must be even");
    const std::size_t n = u.arity() / 2;
    AffineSignature uu = unitarize(u);

    CliffordTableau t;
    t.n = n;
    auto image_of = [&](PauliKind kind, std::size_t j) {
        auto img = conjugate_by(uu, pauli_single(kind, j, n));
        auto rec = recognize_pauli(img);
        if (!rec.ok)
            throw InternalTheoremViolation("conjugation image is not a Pauli operator: " + rec.reason);
        if (!(rec.residual == ExactScalar::one()))
            throw InternalTheoremViolation("conjugation image has a non-unit residual scalar");
        if (!is_hermitian(rec.op))
            throw InternalTheoremViolation("conjugation image of a Hermitian generator is not Hermitian");
        return rec.op;
    };
    for (std::size_t j = 0; j < n; ++j) t.x_images.push_back(image_of(PauliKind::X, j));
    for (std::size_t j = 0; j < n; ++j) t.z_images.push_back(image_of(PauliKind::Z, j));
    return t;
}

bool check_symplectic(const CliffordTableau& t, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (std::size_t j = 0; j < t.n; ++j) {
        if (!is_hermitian(t.x_images[j]) || !is_hermitian(t.z_images[j]))
            return fail("image is not Hermitian");
        if (!pauli_sign(t.x_images[j]) || !pauli_sign(t.z_images[j]))
            return fail("image is not a signed tensor word");
    }
    for (std::size_t j = 0; j < t.n; ++j) {
        for (std::size_t l = 0; l < t.n; ++l) {
            if (anticommutes(t.x_images[j], t.x_images[l])) return fail("X images anticommute");
            if (anticommutes(t.z_images[j], t.z_images[l])) return fail("Z images anticommute");
            const bool want = (j == l);
            if (anticommutes(t.x_images[j], t.z_images[l]) != want)
                return fail("X/Z commutation pattern broken");
        }
    }
    return true;
}

std::string print_tableau(const CliffordTableau& t) {
    std::ostringstream out;
    auto emit = [&](char gen, std::size_t j, const PauliOperator& p) {
        auto sign = pauli_sign(p);
        out << gen << (j + 1) << " -> " << (sign && *sign < 0 ? '-' : '+');
        for (std::size_t q = 0; q < p.n; ++q) {
            switch (pauli_letter(p, q)) {
                case PauliKind::I: out << 'I'; break;
                case PauliKind::X: out << 'X'; break;
                case PauliKind::Y: out << 'Y'; break;
                case PauliKind::Z: out << 'Z'; break;
            }
        }
        out << "\n";
    };
    for (std::size_t j = 0; j < t.n; ++j) emit('X', j, t.x_images[j]);
    for (std::size_t j = 0; j < t.n; ++j) emit('Z', j, t.z_images[j]);
    return out.str();
}

}  // namespace affine
