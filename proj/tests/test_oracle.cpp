#include <doctest.h>

#include <cmath>
#include <random>

#include "affine/errors.hpp"
#include "affine/oracle.hpp"
#include "affine/signature.hpp"
#include "affine/verify.hpp"
#include "helpers.hpp"

using namespace affine;
using namespace affine::oracle;
using testutil::bv;

TEST_CASE("dense_gate: literal H and CNOT") {
    const double s = 1.0 / std::sqrt(2.0);
    auto h = dense_gate(Gate::one_qubit(GateKind::H, 0), 1);
    CHECK(std::abs(h.at(0, 0) - s) < 1e-15);
    CHECK(std::abs(h.at(1, 1) + s) < 1e-15);

    auto cnot = dense_gate(Gate::two_qubit(GateKind::CNOT, 0, 1), 2);
    DenseMatrix ref(2);
    ref.at(0, 0) = ref.at(1, 1) = ref.at(2, 3) = ref.at(3, 2) = 1.0;
    CHECK(DenseMatrix::max_abs_diff(cnot, ref) <= 1e-15);

    auto p = dense_gate(Gate::one_qubit(GateKind::P, 0), 1);
    CHECK(p.at(1, 1) == std::complex<double>(0.0, 1.0));

    CHECK_THROWS_AS(dense_gate(Gate::one_qubit(GateKind::H, 0), 11), DenseLimitExceeded);
}

TEST_CASE("dense_circuit: identity, cancellation, GHZ column") {
    CHECK(dense_circuit({2, {}}).max_abs_diff_from_identity() <= 1e-15);
    auto hh = dense_circuit(parse_circuit("qubits 1\nh 0\nh 0\n"));
    CHECK(hh.max_abs_diff_from_identity() <= 1e-12);

    auto ghz = dense_circuit(parse_circuit("qubits 2\nh 0\ncnot 0 1\n"));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(ghz.at(0, 0) - s) < 1e-12);
    CHECK(std::abs(ghz.at(3, 0) - s) < 1e-12);
    CHECK(std::abs(ghz.at(1, 0)) < 1e-12);
    CHECK(std::abs(ghz.at(2, 0)) < 1e-12);

    auto state = dense_state(parse_circuit("qubits 2\nh 0\ncnot 0 1\n"), bv({0, 0}));
    CHECK(std::abs(state[0] - s) < 1e-12);
    CHECK(std::abs(state[3] - s) < 1e-12);
}

TEST_CASE("dense verdicts: unitary, Pauli membership, Clifford") {
    auto h = dense_gate(Gate::one_qubit(GateKind::H, 0), 1);
    CHECK(dense_is_unitary(h));
    CHECK(!dense_in_pauli_group(h).has_value());
    CHECK(dense_is_clifford(h));

    auto y = dense_from_pauli(pauli_single(PauliKind::Y, 0, 1));
    auto rec = dense_in_pauli_group(y);
    REQUIRE(rec.has_value());
    CHECK(*rec == pauli_single(PauliKind::Y, 0, 1));

    // T = diag(1, e^{i pi/4}) is unitary but not Clifford.
    DenseMatrix t(1);
    t.at(0, 0) = 1.0;
    t.at(1, 1) = std::polar(1.0, std::acos(-1.0) / 4.0);
    CHECK(dense_is_unitary(t));
    CHECK(!dense_is_clifford(t));

    DenseMatrix half = h;
    for (auto& v : half.a) v *= 0.5;
    CHECK(!dense_is_unitary(half));
}

TEST_CASE("dense_in_pauli_group round-trips the (e, r, c) triple") {
    std::mt19937_64 rng(64);
    for (int t = 0; t < 80; ++t) {
        const std::size_t n = 1 + rng() % 4;
        PauliOperator p = PauliOperator::identity(n);
        for (std::size_t q = 0; q < n; ++q) {
            p.e.set(q, rng() & 1u);
            p.r.set(q, rng() & 1u);
        }
        p.c = static_cast<uint8_t>(rng() & 3u);
        auto rec = dense_in_pauli_group(dense_from_pauli(p));
        REQUIRE(rec.has_value());
        CHECK(*rec == p);
    }
}

TEST_CASE("dense_rank: full rank and deficiency") {
    CHECK(dense_rank(DenseMatrix::identity(2)) == 4);
    DenseMatrix m(1);
    m.at(0, 0) = 1.0;
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    m.at(1, 1) = 1.0;
    CHECK(dense_rank(m) == 1);
    CHECK(dense_rank(DenseMatrix(2)) == 0);
}

TEST_CASE("random generators are deterministic per seed") {
    auto c1 = random_clifford_circuit(4, 20, 9001);
    auto c2 = random_clifford_circuit(4, 20, 9001);
    CHECK(print_circuit(c1) == print_circuit(c2));
    CHECK(random_clifford_circuit(3, 0, 5).gates.empty());

    auto f1 = random_affine_signature(5, 77);
    auto f2 = random_affine_signature(5, 77);
    CHECK(f1 == f2);
    CHECK(!(random_affine_signature(5, 78) == f1));
}

TEST_CASE("random_affine_signature always satisfies the invariants") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
        auto f = random_affine_signature(rng() % 9, rng());
        std::string why;
        CHECK_MESSAGE(check_canonical_invariants(f, &why), why);
    }
}

TEST_CASE("random circuits only use the generator set") {
    auto c = random_clifford_circuit(5, 50, 17);
    for (const auto& g : c.gates) {
        const bool gen = g.kind == GateKind::H || g.kind == GateKind::P ||
                         g.kind == GateKind::CNOT;
        CHECK(gen);
        CHECK(g.q0 < 5);
        if (g.is_two_qubit()) {
            CHECK(g.q1 < 5);
            CHECK(g.q1 != g.q0);
        }
    }
}

TEST_CASE("master cross-check: signatures vs dense on random circuits") {
    std::mt19937_64 rng(3141);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 1 + rng() % 4;
        auto c = random_clifford_circuit(n, rng() % 18, rng());
        CHECK(circuit_vs_dense_dev(c) <= 1e-9);
    }
}
