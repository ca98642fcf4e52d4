#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "affine/circuit.hpp"
#include "affine/dense.hpp"
#include "affine/pauli.hpp"
#include "affine/signature.hpp"

namespace affine::oracle {

/// Literal gate matrix embedded on n qubits by index arithmetic
/// (qubit 0 is the most significant index bit). Macro kinds produce the
/// same expansion the signature path uses, so y carries the -i phase.
DenseMatrix dense_gate(const Gate& g, std::size_t n, std::size_t max_n = 10);

/// Ordered product of gate matrices, rightmost factor first in time.
DenseMatrix dense_circuit(const Circuit& c, std::size_t max_n = 10);

/// Column of the circuit matrix at the given basis state.
std::vector<std::complex<double>> dense_state(const Circuit& c, const BitVec& input,
                                              std::size_t max_n = 10);

bool dense_is_unitary(const DenseMatrix& m, double tol = 1e-9);

/// Recovers (e, r, c) by entry inspection when the matrix is a Pauli-group
/// element with entries in {0, +-1, +-i}; empty otherwise.
std::optional<PauliOperator> dense_in_pauli_group(const DenseMatrix& m, double tol = 1e-9);

/// Conjugates every X_j / Z_j generator and pattern-matches the images.
bool dense_is_clifford(const DenseMatrix& m, double tol = 1e-9);

/// Entrywise matrix of a Pauli operator built directly from the entry normal
/// form (the independent reference for the signature path).
DenseMatrix dense_from_pauli(const PauliOperator& p, std::size_t max_n = 10);

/// Numeric rank via Gaussian elimination with partial pivoting.
std::size_t dense_rank(DenseMatrix m, double tol = 1e-6);

/// Uniformly random H/P/CNOT circuit; deterministic for a fixed seed.
Circuit random_clifford_circuit(std::size_t n, std::size_t length, uint64_t seed);

/// Random affine signature: a feasible random support (built around a random
/// particular solution), random phase and a random ring scalar. A small
/// fraction of draws is the zero signature. Output always satisfies the
/// representation invariants.
AffineSignature random_affine_signature(std::size_t arity, uint64_t seed);

}  // namespace affine::oracle
