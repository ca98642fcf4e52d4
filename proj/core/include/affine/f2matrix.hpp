#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "affine/bitvec.hpp"

namespace affine {

/// Row-major bit-packed matrix over F2. Hot paths are row xors; columns are
/// addressed by index and a transpose is always an explicit copy.
class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows, BitVec(cols)) {}

    static F2Matrix identity(std::size_t n);
    static F2Matrix from_strings(const std::vector<std::string>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v) { data_[r].set(c, v); }
    void flip(std::size_t r, std::size_t c) { data_[r].flip(c); }

    const BitVec& row(std::size_t r) const { return data_[r]; }
    BitVec& row(std::size_t r) { return data_[r]; }

    void xor_rows(std::size_t dst, std::size_t src) { data_[dst] ^= data_[src]; }
    void swap_rows(std::size_t a, std::size_t b) { std::swap(data_[a], data_[b]); }

    void append_row(BitVec r);
    void erase_row(std::size_t r) { data_.erase(data_.begin() + static_cast<long>(r)); --rows_; }
    void erase_col(std::size_t c);

    F2Matrix transposed() const;

    bool operator==(const F2Matrix& o) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BitVec> data_;
};

struct RrefResult {
    F2Matrix r;                                        // reduced matrix, pivot rows first
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col) per pivot
    std::size_t rank = 0;
};

/// Reduced row echelon form with pivot columns chosen greedily in
/// pivot_order (a permutation of the column indices). Zero rows sink to
/// the bottom; the row space is preserved.
RrefResult rref(const F2Matrix& m, const std::vector<std::size_t>& pivot_order);
RrefResult rref(const F2Matrix& m);  // natural left-to-right order

/// Like rref but carries the right-hand side along: returns the reduced
/// (A | b) pair. feasible is false iff a row reduced to 0 = 1.
struct RrefSystem {
    F2Matrix a;
    BitVec b;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    std::size_t rank = 0;
    bool feasible = true;
};
RrefSystem rref_system(F2Matrix a, BitVec b, const std::vector<std::size_t>& pivot_order);
RrefSystem rref_system(F2Matrix a, BitVec b);

struct AffineSolution {
    BitVec particular;
    std::vector<BitVec> kernel_basis;
};

/// Solves Ax = b over F2. Empty optional means the system is infeasible.
/// The solution set is particular + span(kernel_basis), with
/// kernel_basis.size() == cols - rank(A).
std::optional<AffineSolution> solve_affine(const F2Matrix& a, const BitVec& b);

/// True iff the square matrix has full rank over F2. Throws on non-square input.
bool is_nonsingular(const F2Matrix& m);

}  // namespace affine
