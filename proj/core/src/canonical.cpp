#include "affine/canonical.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "affine/errors.hpp"

namespace affine {

namespace {

std::size_t output_index(std::size_t n, std::size_t slot) { return 2 * n - 1 - slot; }

}  // namespace

NonsingularForm extract_form(const AffineSignature& f) {
    if (f.arity() % 2 != 0) throw std::invalid_argument("extract_form: arity must be even");
    if (f.is_zero()) throw std::invalid_argument("extract_form: zero signature");
    const std::size_t n = f.arity() / 2;

    // Re-reduce with output columns first (in y_1..y_n order) so pivots land
    // on outputs and all inputs stay free.
    std::vector<std::size_t> order;
    order.reserve(2 * n);
    for (std::size_t slot = 0; slot < n; ++slot) order.push_back(output_index(n, slot));
    for (std::size_t j = 0; j < n; ++j) order.push_back(j);
    auto sys = rref_system(f.support().a, f.support().b, order);
    assert(sys.feasible);

    for (auto [row, col] : sys.pivots)
        if (col < n)
            throw SingularDetected("support constraint involves input variables only");

    const std::size_t rank = sys.rank;
    const std::size_t r = n - rank;

    // A combination of rows with zero input part would be an output-only
    // equation, i.e. a zero column of the matrix.
    {
        F2Matrix xblock(rank, n);
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < n; ++j)
                xblock.set(i, j, sys.a.get(i, j));
        if (rref(xblock).rank < rank)
            throw SingularDetected("support constraint involves output variables only");
    }

    // Partition output slots into dependent (pivot) and free.
    std::vector<bool> dependent(n, false);
    std::vector<std::size_t> row_of_slot(n, 0);
    for (std::size_t i = 0; i < rank; ++i) {
        const std::size_t slot = 2 * n - 1 - sys.pivots[i].second;
        dependent[slot] = true;
        row_of_slot[slot] = i;
    }
    NonsingularForm form;
    form.n = n;
    form.r = r;
    std::vector<std::size_t> free_slots, dep_slots;
    for (std::size_t slot = 0; slot < n; ++slot)
        (dependent[slot] ? dep_slots : free_slots).push_back(slot);
    form.out_perm = free_slots;
    form.out_perm.insert(form.out_perm.end(), dep_slots.begin(), dep_slots.end());

    form.a = F2Matrix(rank, n);
    form.b_mat = F2Matrix(rank, r);
    form.b = BitVec(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        const std::size_t row = row_of_slot[dep_slots[i]];
        for (std::size_t j = 0; j < n; ++j) form.a.set(i, j, sys.a.get(row, j));
        for (std::size_t a = 0; a < r; ++a)
            form.b_mat.set(i, a, sys.a.get(row, output_index(n, free_slots[a])));
        form.b.set(i, sys.b.get(row));
    }

    // Rewrite the phase so it involves inputs and free outputs only, then
    // split it into the three blocks.
    auto w = f.to_raw();
    w.rows.clear();
    w.rhs.clear();
    for (std::size_t i = 0; i < rank; ++i) {
        w.rows.push_back(sys.a.row(i));
        w.rhs.push_back(sys.b.get(i) ? 1 : 0);
    }
    for (std::size_t i = 0; i < rank; ++i) {
        const std::size_t col = sys.pivots[i].second;
        if (w.diag[col] == 0 && !w.cross[col].any()) continue;
        BitVec expr = w.rows[i];
        expr.set(col, false);
        raw::substitute_phase(w, col, expr, w.rhs[i] != 0);
    }
    form.scalar = w.scalar;

    form.c1.diag.assign(n, 0);
    form.c1.cross = F2Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        form.c1.diag[j] = w.diag[j];
        for (std::size_t l = 0; l < n; ++l) form.c1.cross.set(j, l, w.cross[j].get(l));
    }
    form.c2.diag.assign(r, 0);
    form.c2.cross = F2Matrix(r, r);
    form.c3 = F2Matrix(r, n);
    for (std::size_t a = 0; a < r; ++a) {
        const std::size_t va = output_index(n, free_slots[a]);
        form.c2.diag[a] = w.diag[va];
        for (std::size_t b2 = 0; b2 < r; ++b2)
            form.c2.cross.set(a, b2, w.cross[va].get(output_index(n, free_slots[b2])));
        for (std::size_t j = 0; j < n; ++j) form.c3.set(a, j, w.cross[va].get(j));
    }
    return form;
}

F2Matrix cf_matrix(const NonsingularForm& form) {
    F2Matrix cf(form.n, form.n);
    const std::size_t dep = form.n - form.r;
    for (std::size_t i = 0; i < dep; ++i)
        for (std::size_t j = 0; j < form.n; ++j) cf.set(i, j, form.a.get(i, j));
    for (std::size_t i = 0; i < form.r; ++i)
        for (std::size_t j = 0; j < form.n; ++j) cf.set(dep + i, j, form.c3.get(i, j));
    return cf;
}

UnitaryVerdict check_unitary(const AffineSignature& f) {
    if (f.arity() % 2 != 0) throw std::invalid_argument("check_unitary: arity must be even");
    if (f.is_zero()) throw std::invalid_argument("check_unitary: zero signature");
    NonsingularForm form;
    try {
        form = extract_form(f);
    } catch (const SingularDetected&) {
        return {UnitaryStatus::Singular, 0};
    }
    if (!is_nonsingular(cf_matrix(form))) return {UnitaryStatus::Singular, 0};
    const int target = -static_cast<int>(form.r);
    if (f.scalar().p() == target) return {UnitaryStatus::Unitary, target};
    return {UnitaryStatus::UnitaryAfterScaling, target};
}

AffineSignature unitarize(const AffineSignature& f) {
    auto verdict = check_unitary(f);
    if (verdict.status == UnitaryStatus::Singular)
        throw SingularDetected("unitarize: signature matrix is singular");
    return f.with_scalar_p(verdict.required_p);
}

}  // namespace affine
