#pragma once

#include <cstdint>
#include <vector>

#include "affine/bitvec.hpp"
#include "affine/exact_scalar.hpp"
#include "affine/f2matrix.hpp"

namespace affine::raw {

/// Unnormalized working form of an affine signature: support rows need not be
/// reduced and the phase may sit on dependent variables. All the closure
/// operations are implemented here as in-place kernels; the public type is
/// obtained by one canonicalization pass at the end of an operation chain.
///
/// Semantics: value(x) = scalar * i^{Q(x)} if every row satisfies
/// <row, x> = rhs, else 0, with Q(x) = sum_j diag[j]*x_j (mod 4)
/// + 2 * sum_{j<l} cross[j][l]*x_j*x_l.
struct RawSignature {
    std::size_t arity = 0;
    ExactScalar scalar;
    std::vector<BitVec> rows;     // support constraints, width = arity
    std::vector<uint8_t> rhs;     // one bit per row
    std::vector<uint8_t> diag;    // arity entries mod 4
    std::vector<BitVec> cross;    // arity x arity, symmetric, zero diagonal

    static RawSignature free_of(std::size_t k);  // all-ones signature, scalar 1

    void add_constraint(BitVec row, bool b);
    void set_cross(std::size_t j, std::size_t l, bool v);
    bool get_cross(std::size_t j, std::size_t l) const { return cross[j].get(l); }
};

/// Substitutes x_j := sum_{u in expr} x_u + c (an F2 identity valid on the
/// support) into the phase, moving diag[j] and cross row j onto expr.
/// The rewriting is exact mod 4 because the cross coefficients stay even:
///   d*x_j^2        -> d*T^2 = sum d*(1+2c)*x_u + 2d * pairs(expr) + d*c
///   2*x_j*C(rest)  -> 2*T*C  with T = sum_{u in expr} x_u + c.
/// expr must not contain bit j. The constant lands in the scalar.
void substitute_phase(RawSignature& f, std::size_t j, const BitVec& expr, bool c);

/// Adds m * (sum_{u in mask} x_u)^2 to the phase, m in {1, 3}. Used by the
/// odd branches of free-variable marginalization.
void add_scaled_square(RawSignature& f, const BitVec& mask, int m);

/// Removes variable j from every component (column drop). The caller must
/// already have eliminated j from support and phase.
void drop_variable(RawSignature& f, std::size_t j);

RawSignature tensor(const RawSignature& f, const RawSignature& g);

/// sigma maps old variable position -> new position (a bijection).
RawSignature permute(const RawSignature& f, const std::vector<std::size_t>& sigma);

/// Sets x_j := x_l and drops variable j (arity decreases by one).
void identify_inplace(RawSignature& f, std::size_t j, std::size_t l);

/// Sums over x_j in {0,1} and drops variable j. If a support row involves
/// x_j the row is consumed by the sum; otherwise the partial sum
/// 1 + i^{c + 2L} is resolved by case analysis on c = diag[j]:
///   c=0: factor 2*[L=0]   -> new constraint L=0, scalar *2
///   c=2: factor 2*[L=1]   -> new constraint L=1, scalar *2
///   c=1: factor sqrt2 * w * i^{3 L^2} -> scalar *(p+1, q+1), phase += 3*L^2
///   c=3: factor sqrt2 * w^7 * i^{L^2} -> scalar *(p+1, q+7), phase += 1*L^2
/// with the degenerate L == 0 cases folding into the scalar alone
/// (c=0 doubles, c=2 yields the zero signature, c=1/3 give 1 +- i).
void marginalize_inplace(RawSignature& f, std::size_t j);

}  // namespace affine::raw
