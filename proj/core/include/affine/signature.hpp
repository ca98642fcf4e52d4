#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "affine/bitvec.hpp"
#include "affine/dense.hpp"
#include "affine/exact_scalar.hpp"
#include "affine/f2matrix.hpp"
#include "affine/raw_signature.hpp"

namespace affine {

/// Phase exponent Q(x) = sum_j diag[j]*x_j + 2*sum_{j<l} cross[j][l]*x_j*x_l,
/// evaluated mod 4 as a power of i. Linear terms are absorbed into diag since
/// x = x^2 on {0,1}; cross coefficients are even by construction, which is
/// what keeps mod-2 substitutions into the exponent exact mod 4.
struct QuadraticPhase {
    std::vector<uint8_t> diag;  // entries mod 4
    F2Matrix cross;             // symmetric, zero diagonal

    bool operator==(const QuadraticPhase& o) const = default;
};

/// Support {x : Ax = b} with A in reduced row-echelon form (leftmost pivot
/// rule), rows independent, pivot columns recorded in ascending order.
/// An infeasible system is never stored; the zero function is represented
/// at the signature level instead.
struct AffineSupport {
    F2Matrix a;
    BitVec b;                         // one bit per row
    std::vector<std::size_t> pivots;  // pivot column per row

    bool operator==(const AffineSupport& o) const = default;
};

/// An arity-k signature λ χ_{Ax=b} i^{Q(x)} with λ restricted to the exact
/// ring {0} u {2^(p/2) w^q}. Canonical invariant: the phase involves free
/// (non-pivot) variables only, so structural equality is semantic equality.
class AffineSignature {
public:
    AffineSignature() = default;

    static AffineSignature zero(std::size_t arity);
    /// The all-ones signature (empty support, zero phase, scalar 1).
    static AffineSignature all_free(std::size_t arity);
    /// Unary point signature χ_{x = bit}.
    static AffineSignature point(bool bit);
    /// Binary equality signature χ_{x1 = x2}.
    static AffineSignature equality();
    /// Identity map on n qubits (arity 2n).
    static AffineSignature identity_map(std::size_t n_qubits);

    std::size_t arity() const { return arity_; }
    bool is_zero() const { return scalar_.is_zero(); }
    const ExactScalar& scalar() const { return scalar_; }
    const AffineSupport& support() const { return support_; }
    const QuadraticPhase& phase() const { return phase_; }

    /// Returns a copy with the scalar multiplied by s (zero s gives the zero
    /// signature).
    AffineSignature scaled(const ExactScalar& s) const;
    /// Returns a copy with the scalar's half-power-of-two exponent set to p.
    AffineSignature with_scalar_p(int p) const;

    bool operator==(const AffineSignature& o) const = default;

    raw::RawSignature to_raw() const;
    /// Normalizes a working form: detects the zero function, reduces the
    /// support and rewrites the phase onto free variables.
    static AffineSignature canonicalize(raw::RawSignature f);

private:
    std::size_t arity_ = 0;
    ExactScalar scalar_;
    AffineSupport support_;
    QuadraticPhase phase_;
};

/// Builds a signature from the sum-of-linear-indicators form: value(x) =
/// lambda * χ_{Ax=b} * i^{sum_j <alpha_j, x> + c_j} where each indicator is a
/// 0/1 value. Each indicator contributes the square of its integer linear
/// form to the quadratic phase.
AffineSignature from_linear_form(std::size_t arity, const ExactScalar& lambda,
                                 const F2Matrix& a, const BitVec& b,
                                 const std::vector<std::pair<BitVec, bool>>& alphas);

ExactScalar evaluate(const AffineSignature& f, const BitVec& x);

AffineSignature tensor(const AffineSignature& f, const AffineSignature& g);

/// result(x_0..x_{k-1}) = f(x_{sigma(0)}, ..., x_{sigma(k-1)}).
AffineSignature permute(const AffineSignature& f, const std::vector<std::size_t>& sigma);

/// Sets x_j := x_l and drops variable j (arity decreases by one).
AffineSignature identify(const AffineSignature& f, std::size_t j, std::size_t l);

/// Sums over x_j in {0,1} and drops variable j.
AffineSignature marginalize(const AffineSignature& f, std::size_t j);

/// Complex conjugate: negates diag mod 4 and the scalar's w-power mod 8.
AffineSignature conjugate(const AffineSignature& f);

/// Signature whose matrix is the conjugate transpose of f's. Realized as
/// conjugation followed by the full variable reversal, which exchanges the
/// row block with the reversed column block.
AffineSignature adjoint(const AffineSignature& f);

/// Matrix of an arity-2n signature: the entry at row (x_1..x_n) and column
/// (x_2n..x_{n+1}), both read big-endian, is f(x_1..x_2n). Note the column
/// bits are reversed. Throws DenseLimitExceeded above max_n qubits.
DenseMatrix signature_matrix(const AffineSignature& f, std::size_t max_n = 10);

/// Sequential composition: matrix of the result is M_f * M_g. Realized as
/// tensor, then identifying f's column variables with g's row variables,
/// then summing the identified wires.
AffineSignature compose(const AffineSignature& f, const AffineSignature& g);

/// Equality modulo global phase: canonical forms agree except that the
/// scalars' w-powers may differ. Two zero signatures of equal arity compare
/// equal.
bool eq_mod_phase(const AffineSignature& f, const AffineSignature& g);

/// Checks every representation invariant; returns false and a reason if one
/// fails. Used by the self-test and the fuzzing suites.
bool check_canonical_invariants(const AffineSignature& f, std::string* why = nullptr);

/// One-record text format. Line 1: "sig k=<arity> p=<int> q=<0..7> zero=<0|1>",
/// then "row <bits> = <bit>" per support constraint (bits indexed by variable,
/// leftmost = variable 0), then "diag <k values in 0..3>", then "cross j l"
/// per set cross bit (j < l).
std::string print_signature(const AffineSignature& f);
AffineSignature parse_signature(const std::string& text);

}  // namespace affine
