#include <doctest.h>

#include <random>

#include "affine/canonical.hpp"
#include "affine/circuit.hpp"
#include "affine/errors.hpp"
#include "affine/oracle.hpp"
#include "affine/verify.hpp"
#include "helpers.hpp"

using namespace affine;

namespace {

AffineSignature h_sig() { return gate_signature(Gate::one_qubit(GateKind::H, 0), 1); }
AffineSignature p_sig() { return gate_signature(Gate::one_qubit(GateKind::P, 0), 1); }
AffineSignature cnot_sig() { return gate_signature(Gate::two_qubit(GateKind::CNOT, 0, 1), 2); }

/// Rebuilds a signature from its solved form; support and phase must agree
/// with the original exactly (the scalar may differ by a power of w).
AffineSignature rebuild(const NonsingularForm& form) {
    const std::size_t n = form.n, r = form.r;
    auto raw = raw::RawSignature::free_of(2 * n);
    auto yvar = [&](std::size_t slot) { return 2 * n - 1 - slot; };
    for (std::size_t i = 0; i < n - r; ++i) {
        BitVec row(2 * n);
        row.set(yvar(form.out_perm[r + i]), true);
        for (std::size_t j = 0; j < n; ++j)
            if (form.a.get(i, j)) row.set(j, true);
        for (std::size_t a = 0; a < r; ++a)
            if (form.b_mat.get(i, a)) row.set(yvar(form.out_perm[a]), true);
        raw.add_constraint(std::move(row), form.b.get(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
        raw.diag[j] = form.c1.diag[j];
        for (std::size_t l = j + 1; l < n; ++l)
            if (form.c1.cross.get(j, l)) raw.set_cross(j, l, true);
    }
    for (std::size_t a = 0; a < r; ++a) {
        raw.diag[yvar(form.out_perm[a])] = form.c2.diag[a];
        for (std::size_t b2 = a + 1; b2 < r; ++b2)
            if (form.c2.cross.get(a, b2))
                raw.set_cross(yvar(form.out_perm[a]), yvar(form.out_perm[b2]), true);
        for (std::size_t j = 0; j < n; ++j)
            if (form.c3.get(a, j)) raw.set_cross(yvar(form.out_perm[a]), j, true);
    }
    raw.scalar = form.scalar;
    return AffineSignature::canonicalize(std::move(raw));
}

}  // namespace

TEST_CASE("extract_form: H has one free output and C3 = [1]") {
    auto form = extract_form(h_sig());
    CHECK(form.n == 1);
    CHECK(form.r == 1);
    CHECK(form.a.rows() == 0);
    CHECK(form.c1.diag[0] == 0);
    CHECK(form.c2.diag[0] == 0);
    CHECK(form.c3.get(0, 0));
    CHECK(cf_matrix(form) == F2Matrix::identity(1));
}

TEST_CASE("extract_form: P binds y = x with diagonal phase") {
    auto form = extract_form(p_sig());
    CHECK(form.n == 1);
    CHECK(form.r == 0);
    CHECK(form.a == F2Matrix::identity(1));
    CHECK(!form.b.get(0));
    CHECK(form.c1.diag[0] == 1);
    CHECK(cf_matrix(form) == F2Matrix::identity(1));
}

TEST_CASE("extract_form: CNOT support map") {
    auto form = extract_form(cnot_sig());
    CHECK(form.n == 2);
    CHECK(form.r == 0);
    CHECK(form.a == F2Matrix::from_strings({"10", "11"}));
    CHECK(!form.b.any());
    CHECK(form.c1.diag[0] == 0);
    CHECK(form.c1.diag[1] == 0);
    CHECK(is_nonsingular(cf_matrix(form)));
}

TEST_CASE("cf_matrix: zero phase row with all outputs free flags a singular matrix") {
    // The all-ones arity-2 signature: no constraints, r = n = 1, C3 = [0],
    // so [A; C3] is the zero matrix. The dense matrix has proportional rows.
    auto f = AffineSignature::all_free(2);
    auto form = extract_form(f);
    CHECK(form.r == 1);
    CHECK(cf_matrix(form) == F2Matrix(1, 1));
    CHECK(!is_nonsingular(cf_matrix(form)));
    CHECK(check_unitary(f).status == UnitaryStatus::Singular);
    auto m = signature_matrix(f);
    CHECK(std::abs(m.at(0, 0) - m.at(1, 0)) < 1e-15);  // rows proportional
    CHECK(std::abs(m.at(0, 1) - m.at(1, 1)) < 1e-15);
    CHECK(oracle::dense_rank(m) == 1);
}

TEST_CASE("extract_form: input-only constraint is flagged singular") {
    // χ_{x1 = 0, x2 = 0}: a rank-one matrix.
    auto f = AffineSignature::canonicalize([] {
        auto r = raw::RawSignature::free_of(2);
        r.add_constraint(BitVec::from_string("10"), false);
        r.add_constraint(BitVec::from_string("01"), false);
        return r;
    }());
    CHECK_THROWS_AS(extract_form(f), SingularDetected);
    CHECK(check_unitary(f).status == UnitaryStatus::Singular);
}

TEST_CASE("extract_form: output-only constraint is flagged singular") {
    // y1 = x1 and y2 = x1 force the output-only equation y1 + y2 = 0.
    auto f = AffineSignature::canonicalize([] {
        auto r = raw::RawSignature::free_of(4);
        r.add_constraint(BitVec::from_string("1001"), false);  // x1 = y1 (var 3)
        r.add_constraint(BitVec::from_string("1010"), false);  // x1 = y2 (var 2)
        return r;
    }());
    CHECK_THROWS_AS(extract_form(f), SingularDetected);
    // The dense matrix indeed has a zero column.
    auto m = signature_matrix(f);
    bool zero_col = false;
    for (std::size_t c = 0; c < m.dim && !zero_col; ++c) {
        bool all0 = true;
        for (std::size_t r2 = 0; r2 < m.dim; ++r2)
            if (std::abs(m.at(r2, c)) > 1e-12) all0 = false;
        zero_col = all0;
    }
    CHECK(zero_col);
}

TEST_CASE("extract_form rejects zero and odd-arity input") {
    CHECK_THROWS_AS(extract_form(AffineSignature::zero(2)), std::invalid_argument);
    CHECK_THROWS_AS(extract_form(AffineSignature::all_free(3)), std::invalid_argument);
}

TEST_CASE("check_unitary: H is unitary, 2H needs rescaling") {
    CHECK(check_unitary(h_sig()) == UnitaryVerdict{UnitaryStatus::Unitary, -1});
    auto scaled = h_sig().scaled(ExactScalar::make(2, 0));
    auto verdict = check_unitary(scaled);
    CHECK(verdict.status == UnitaryStatus::UnitaryAfterScaling);
    CHECK(verdict.required_p == -1);
    CHECK(unitarize(scaled) == h_sig());
}

TEST_CASE("check_unitary: P and CNOT are unitary as-is") {
    CHECK(check_unitary(p_sig()).status == UnitaryStatus::Unitary);
    CHECK(check_unitary(cnot_sig()).status == UnitaryStatus::Unitary);
    CHECK(unitarize(p_sig()) == p_sig());
    CHECK(unitarize(cnot_sig()) == cnot_sig());
}

TEST_CASE("unitarize propagates the singular verdict") {
    auto f = AffineSignature::canonicalize([] {
        auto r = raw::RawSignature::free_of(2);
        r.add_constraint(BitVec::from_string("10"), false);
        r.add_constraint(BitVec::from_string("01"), false);
        return r;
    }());
    CHECK_THROWS_AS(unitarize(f), SingularDetected);
}

TEST_CASE("unitarized circuit signatures satisfy U U* = I") {
    std::mt19937_64 rng(606);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 1 + rng() % 3;
        auto f = circuit_signature(oracle::random_clifford_circuit(n, 3 + rng() % 12, rng()));
        f = f.scaled(ExactScalar::make(static_cast<int>(rng() % 7) - 3,
                                       static_cast<int>(rng() & 7u)));
        auto form = extract_form(f);
        CHECK(is_nonsingular(cf_matrix(form)));
        auto m = signature_matrix(unitarize(f));
        CHECK((m * m.adjoint()).max_abs_diff_from_identity() <= 1e-9);
    }
}

TEST_CASE("solved-form round-trip reproduces support and phase") {
    std::mt19937_64 rng(1234);
    auto check_roundtrip = [](const AffineSignature& f) {
        auto form = extract_form(f);
        auto back = rebuild(form);
        CHECK(back.support() == f.support());
        CHECK(back.phase() == f.phase());
        CHECK(back.scalar().p() == f.scalar().p());
    };
    check_roundtrip(h_sig());
    check_roundtrip(p_sig());
    check_roundtrip(cnot_sig());
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + rng() % 3;
        check_roundtrip(circuit_signature(oracle::random_clifford_circuit(n, rng() % 14, rng())));
    }
}

TEST_CASE("extract_form failures imply a zero dense row or column") {
    std::mt19937_64 rng(888);
    int seen = 0;
    for (int t = 0; t < 300 && seen < 40; ++t) {
        const std::size_t n = 1 + rng() % 3;
        auto f = oracle::random_affine_signature(2 * n, rng());
        if (f.is_zero()) continue;
        bool threw = false;
        try {
            (void)extract_form(f);
        } catch (const SingularDetected&) {
            threw = true;
        }
        if (!threw) continue;
        ++seen;
        auto m = signature_matrix(f);
        bool zero_line = false;
        for (std::size_t i = 0; i < m.dim && !zero_line; ++i) {
            bool row0 = true, col0 = true;
            for (std::size_t j = 0; j < m.dim; ++j) {
                if (std::abs(m.at(i, j)) > 1e-12) row0 = false;
                if (std::abs(m.at(j, i)) > 1e-12) col0 = false;
            }
            zero_line = row0 || col0;
        }
        CHECK(zero_line);
    }
    CHECK(seen >= 10);
}

TEST_CASE("nonsingular verdicts agree with numeric rank at desk scale") {
    std::mt19937_64 rng(321);
    int both = 0;
    for (int t = 0; t < 120; ++t) {
        const std::size_t n = 1 + rng() % 3;
        AffineSignature f;
        if (t % 3 == 0)
            f = circuit_signature(oracle::random_clifford_circuit(n, rng() % 10, rng()));
        else
            f = oracle::random_affine_signature(2 * n, rng());
        if (f.is_zero()) continue;
        const bool dense_ns = oracle::dense_rank(signature_matrix(f)) == (std::size_t(1) << n);
        const bool claimed = check_unitary(f).status != UnitaryStatus::Singular;
        CHECK(dense_ns == claimed);
        if (dense_ns) ++both;
    }
    CHECK(both > 10);  // the sample really contains nonsingular cases
}
