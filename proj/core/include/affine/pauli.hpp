#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affine/bitvec.hpp"
#include "affine/signature.hpp"

namespace affine {

enum class PauliKind : uint8_t { I, X, Y, Z };

/// Pauli-group element in entry normal form: the entry at (x, y) is
/// i^c * (-1)^{<r, x>} when x - y = e over F2, and 0 otherwise. e is the
/// X-part, r the Z-part, c a global power of i.
struct PauliOperator {
    std::size_t n = 0;
    BitVec e;
    BitVec r;
    uint8_t c = 0;  // mod 4

    static PauliOperator identity(std::size_t n) { return {n, BitVec(n), BitVec(n), 0}; }

    bool operator==(const PauliOperator& o) const = default;
};

/// Single-letter Pauli on qubit j. Encodings: I -> (0,0,0), X_j -> (e_j, 0, 0),
/// Z_j -> (0, r_j, 0), Y_j -> (e_j, r_j, 3); Y's c = 3 is pinned by matching
/// the entry form against the Y matrix and is load-bearing for sign tracking.
PauliOperator pauli_single(PauliKind kind, std::size_t j, std::size_t n);

/// Matrix product. The phase works out to c1 + c2 + 2*<r2, e1> mod 4.
PauliOperator pauli_mul(const PauliOperator& p1, const PauliOperator& p2);

/// True iff p1 p2 = -p2 p1, i.e. <e1,r2> + <e2,r1> is odd.
bool anticommutes(const PauliOperator& p1, const PauliOperator& p2);

/// True iff the operator equals its own adjoint: c = <r, e> mod 2.
bool is_hermitian(const PauliOperator& p);

/// Sign of the operator relative to the plain tensor word of I/X/Y/Z letters:
/// +1 or -1 for Hermitian operators, empty otherwise.
std::optional<int> pauli_sign(const PauliOperator& p);

/// Letter of qubit q as read from the (e, r) bit pair.
PauliKind pauli_letter(const PauliOperator& p, std::size_t q);

/// The arity-2n affine signature whose matrix is exactly the Pauli matrix.
AffineSignature pauli_to_signature(const PauliOperator& p);

struct PauliRecognition {
    bool ok = false;
    PauliOperator op;
    ExactScalar residual;  // leftover scalar after folding powers of i into c
    std::string reason;    // set when !ok
};

/// Decides whether f is a scalar multiple of a Pauli signature; on success
/// recovers (e, r, c) plus the residual scalar (with w-power folded down to
/// {0, 1}).
PauliRecognition recognize_pauli(const AffineSignature& f);

/// U P U* through signature composition; u must satisfy
/// check_unitary(u) = Unitary.
AffineSignature conjugate_by(const AffineSignature& u, const PauliOperator& p);

/// Conjugation images of the X_j / Z_j generators: a complete description of
/// a Clifford unitary up to phase. Images are Hermitian and preserve the
/// generator commutation pattern.
struct CliffordTableau {
    std::size_t n = 0;
    std::vector<PauliOperator> x_images;
    std::vector<PauliOperator> z_images;
};

/// Extracts the tableau by conjugating every generator and recognizing the
/// results. Throws SingularDetected for singular input and
/// InternalTheoremViolation if any image fails recognition (which must never
/// happen for affine unitaries; the property suite targets it).
CliffordTableau clifford_tableau_of(const AffineSignature& u);

/// Exact commutation/Hermiticity conditions on all image pairs.
bool check_symplectic(const CliffordTableau& t, std::string* why = nullptr);

/// One line per generator, e.g. "X1 -> +XZ" / "Z2 -> -IZ".
std::string print_tableau(const CliffordTableau& t);

}  // namespace affine
