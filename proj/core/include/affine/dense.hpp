#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace affine {

/// Dense complex matrix of dimension 2^n, row-major. Desk-scale only; the
/// brute-force reference path and dense exports both live on this type.
struct DenseMatrix {
    std::size_t n_qubits = 0;
    std::size_t dim = 0;
    std::vector<std::complex<double>> a;

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n)
        : n_qubits(n), dim(std::size_t(1) << n), a(dim * dim) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n);
        for (std::size_t i = 0; i < m.dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    std::complex<double>& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    const std::complex<double>& at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

    DenseMatrix operator*(const DenseMatrix& o) const;
    DenseMatrix adjoint() const;

    /// Largest entrywise |lhs - rhs|.
    static double max_abs_diff(const DenseMatrix& lhs, const DenseMatrix& rhs);
    double max_abs_diff_from_identity() const;
};

}  // namespace affine
