#pragma once

#include <cstddef>
#include <vector>

#include "affine/f2matrix.hpp"
#include "affine/signature.hpp"

namespace affine {

/// Solved form of a nonsingular arity-2n signature. The first n variables
/// (the matrix rows) are x_1..x_n; the outputs are y_1..y_n with y_j bound to
/// variable index 2n-j (the column-index reversal). After renaming outputs by
/// out_perm, the support reads y'' = A x + B y' + b with y' the r free
/// outputs, and the phase splits as
///   i^{x^T C1 x  +  y'^T C2 y'  +  2 y'^T C3 x}
/// with scalar mu in front.
struct NonsingularForm {
    std::size_t n = 0;  // qubit count
    std::size_t r = 0;  // free-output count
    /// Output slots (0-based y indices): first the r free ones, then the
    /// n-r dependent ones, each ascending. Rows of A/B/b follow the
    /// dependent part of this order.
    std::vector<std::size_t> out_perm;
    F2Matrix a;         // (n-r) x n, coefficients on x
    F2Matrix b_mat;     // (n-r) x r, coefficients on y'
    BitVec b;           // length n-r
    QuadraticPhase c1;  // on the n input variables
    QuadraticPhase c2;  // on the r free outputs, in out_perm order
    F2Matrix c3;        // r x n cross block (mod 2; it only appears doubled)
    ExactScalar scalar; // mu
};

/// Extracts the solved form by re-reducing the support with output-first
/// pivots, so every input variable stays free. Throws SingularDetected when
/// some constraint involves inputs only (a zero matrix row) or outputs only
/// (a zero column), both of which contradict nonsingularity.
NonsingularForm extract_form(const AffineSignature& f);

/// The square check matrix [A; C3]; nonsingular over F2 exactly when the
/// signature matrix is nonsingular.
F2Matrix cf_matrix(const NonsingularForm& form);

enum class UnitaryStatus { Singular, UnitaryAfterScaling, Unitary };

struct UnitaryVerdict {
    UnitaryStatus status = UnitaryStatus::Singular;
    /// Scalar exponent p that makes the matrix unitary (-r); meaningful for
    /// the two non-singular verdicts.
    int required_p = 0;

    bool operator==(const UnitaryVerdict& o) const = default;
};

/// Singular if the form cannot be extracted or [A; C3] is singular over F2;
/// otherwise the matrix is unitary up to the scalar, exactly when p = -r.
UnitaryVerdict check_unitary(const AffineSignature& f);

/// Rescales f so its matrix is unitary (sets p := -r, keeping the w-power).
/// Throws SingularDetected when check_unitary says Singular.
AffineSignature unitarize(const AffineSignature& f);

}  // namespace affine
