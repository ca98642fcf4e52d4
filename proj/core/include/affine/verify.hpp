#pragma once

#include <cstddef>
#include <vector>

#include "affine/circuit.hpp"
#include "affine/signature.hpp"

namespace affine::oracle {

/// Largest pointwise deviation between each closure operation and its
/// defining formula, evaluated exhaustively over the combined domain. Keep
/// combined arities at desk scale (<= 12 variables or so).
double tensor_pointwise_dev(const AffineSignature& f, const AffineSignature& g);
double permute_pointwise_dev(const AffineSignature& f, const std::vector<std::size_t>& sigma);
double identify_pointwise_dev(const AffineSignature& f, std::size_t j, std::size_t l);
double marginalize_pointwise_dev(const AffineSignature& f, std::size_t j);

/// Largest entrywise deviation of signature_matrix(compose(f, g)) from the
/// dense product of the factor matrices.
double compose_matrix_dev(const AffineSignature& f, const AffineSignature& g);

/// Largest entrywise deviation between a signature's matrix and a dense
/// reference.
double signature_vs_dense_dev(const AffineSignature& f, const DenseMatrix& ref);

/// Whole-circuit master check: signature_matrix(circuit_signature(c)) vs the
/// dense gate product.
double circuit_vs_dense_dev(const Circuit& c);

}  // namespace affine::oracle
