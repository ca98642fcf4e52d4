#include "affine/f2matrix.hpp"

#include <numeric>
#include <stdexcept>

namespace affine {

F2Matrix F2Matrix::identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

F2Matrix F2Matrix::from_strings(const std::vector<std::string>& rows) {
    F2Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) m.data_[i] = BitVec::from_string(rows[i]);
    return m;
}

void F2Matrix::append_row(BitVec r) {
    if (r.size() != cols_) throw std::invalid_argument("F2Matrix::append_row: width mismatch");
    data_.push_back(std::move(r));
    ++rows_;
}

void F2Matrix::erase_col(std::size_t c) {
    for (auto& r : data_) r.erase_bit(c);
    --cols_;
}

F2Matrix F2Matrix::transposed() const {
    F2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = data_[r].first_set(); c != BitVec::npos; c = data_[r].first_set(c + 1))
            t.set(c, r, true);
    return t;
}

RrefResult rref(const F2Matrix& m, const std::vector<std::size_t>& pivot_order) {
    RrefResult res;
    res.r = m;
    std::size_t next = 0;
    for (std::size_t c : pivot_order) {
        std::size_t pivot_row = BitVec::npos;
        for (std::size_t i = next; i < res.r.rows(); ++i)
            if (res.r.get(i, c)) { pivot_row = i; break; }
        if (pivot_row == BitVec::npos) continue;
        res.r.swap_rows(next, pivot_row);
        for (std::size_t i = 0; i < res.r.rows(); ++i)
            if (i != next && res.r.get(i, c)) res.r.xor_rows(i, next);
        res.pivots.emplace_back(next, c);
        ++next;
    }
    res.rank = next;
    return res;
}

RrefResult rref(const F2Matrix& m) {
    std::vector<std::size_t> order(m.cols());
    std::iota(order.begin(), order.end(), 0);
    return rref(m, order);
}

RrefSystem rref_system(F2Matrix a, BitVec b, const std::vector<std::size_t>& pivot_order) {
    if (a.rows() != b.size()) throw std::invalid_argument("rref_system: rhs length mismatch");
    RrefSystem res;
    std::size_t next = 0;
    for (std::size_t c : pivot_order) {
        std::size_t pivot_row = BitVec::npos;
        for (std::size_t i = next; i < a.rows(); ++i)
            if (a.get(i, c)) { pivot_row = i; break; }
        if (pivot_row == BitVec::npos) continue;
        a.swap_rows(next, pivot_row);
        bool tb = b.get(next); b.set(next, b.get(pivot_row)); b.set(pivot_row, tb);
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (i != next && a.get(i, c)) {
                a.xor_rows(i, next);
                b.set(i, b.get(i) ^ b.get(next));
            }
        res.pivots.emplace_back(next, c);
        ++next;
    }
    for (std::size_t i = next; i < a.rows(); ++i)
        if (b.get(i)) { res.feasible = false; break; }
    res.rank = next;
    res.a = std::move(a);
    res.b = std::move(b);
    return res;
}

RrefSystem rref_system(F2Matrix a, BitVec b) {
    std::vector<std::size_t> order(a.cols());
    std::iota(order.begin(), order.end(), 0);
    return rref_system(std::move(a), std::move(b), order);
}

std::optional<AffineSolution> solve_affine(const F2Matrix& a, const BitVec& b) {
    auto sys = rref_system(a, b);
    if (!sys.feasible) return std::nullopt;

    const std::size_t cols = a.cols();
    std::vector<bool> is_pivot_col(cols, false);
    for (auto [r, c] : sys.pivots) is_pivot_col[c] = true;

    AffineSolution sol;
    sol.particular = BitVec(cols);
    for (auto [r, c] : sys.pivots) sol.particular.set(c, sys.b.get(r));

    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot_col[c]) continue;
        BitVec v(cols);
        v.set(c, true);
        for (auto [pr, pc] : sys.pivots)
            if (sys.a.get(pr, c)) v.set(pc, true);
        sol.kernel_basis.push_back(std::move(v));
    }
    return sol;
}

bool is_nonsingular(const F2Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("is_nonsingular: matrix not square");
    return rref(m).rank == m.rows();
}

}  // namespace affine
