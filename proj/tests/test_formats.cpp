#include <doctest.h>

#include <random>

#include "affine/circuit.hpp"
#include "affine/errors.hpp"
#include "affine/oracle.hpp"
#include "affine/signature.hpp"
#include "helpers.hpp"

using namespace affine;

TEST_CASE("signature format: canonical record layout") {
    auto p = gate_signature(Gate::one_qubit(GateKind::P, 0), 1);
    CHECK(print_signature(p) == "sig k=2 p=0 q=0 zero=0\nrow 11 = 0\ndiag 0 1\n");

    auto h = gate_signature(Gate::one_qubit(GateKind::H, 0), 1);
    CHECK(print_signature(h) == "sig k=2 p=-1 q=0 zero=0\ndiag 0 0\ncross 0 1\n");

    CHECK(print_signature(AffineSignature::zero(2)) == "sig k=2 p=0 q=0 zero=1\ndiag 0 0\n");
    CHECK(print_signature(AffineSignature::all_free(0)) == "sig k=0 p=0 q=0 zero=0\ndiag\n");
}

TEST_CASE("signature format: parse inverts print") {
    auto cases = {
        gate_signature(Gate::one_qubit(GateKind::P, 0), 1),
        gate_signature(Gate::one_qubit(GateKind::H, 0), 1),
        gate_signature(Gate::two_qubit(GateKind::CNOT, 0, 1), 2),
        AffineSignature::zero(3),
        AffineSignature::all_free(0),
    };
    for (const auto& f : cases) {
        auto back = parse_signature(print_signature(f));
        CHECK(back == f);
        CHECK(print_signature(back) == print_signature(f));
    }
}

TEST_CASE("signature format: random round-trips are bit-exact") {
    std::mt19937_64 rng(424242);
    for (int t = 0; t < 100; ++t) {
        auto f = oracle::random_affine_signature(rng() % 10, rng());
        const std::string once = print_signature(f);
        auto parsed = parse_signature(once);
        CHECK(parsed == f);
        CHECK(print_signature(parsed) == once);
    }
}

TEST_CASE("signature format: non-canonical input is normalized") {
    // Redundant row and a phase entry on the pivot variable.
    auto f = parse_signature("sig k=2 p=0 q=0 zero=0\nrow 11 = 0\nrow 11 = 0\ndiag 1 0\n");
    std::string why;
    CHECK(check_canonical_invariants(f, &why));
    CHECK(f.support().a.rows() == 1);
    CHECK(f.phase().diag[0] == 0);
    CHECK(f.phase().diag[1] == 1);
    // Infeasible support collapses to the zero signature.
    auto z = parse_signature("sig k=2 p=0 q=0 zero=0\nrow 11 = 0\nrow 11 = 1\ndiag 0 0\n");
    CHECK(z.is_zero());
}

TEST_CASE("signature format: malformed records are rejected") {
    CHECK_THROWS_AS(parse_signature(""), ParseError);
    CHECK_THROWS_AS(parse_signature("sig k=2 p=0 q=9 zero=0\ndiag 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_signature("sig k=2 p=0 q=0 zero=0\nrow 1 = 0\ndiag 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_signature("sig k=2 p=0 q=0 zero=0\ndiag 0 4\n"), ParseError);
    CHECK_THROWS_AS(parse_signature("sig k=2 p=0 q=0 zero=0\ndiag 0 0\ncross 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_signature("sig k=2 p=0 q=0 zero=0\ndiag 0 0\nblah\n"), ParseError);
    CHECK_THROWS_AS(parse_signature("sig k=2 p=0 q=0 zero=0\n"), ParseError);
}

TEST_CASE("circuit format: random round-trips are bit-exact") {
    std::mt19937_64 rng(515151);
    for (int t = 0; t < 100; ++t) {
        auto c = oracle::random_clifford_circuit(1 + rng() % 6, rng() % 25, rng());
        const std::string once = print_circuit(c);
        CHECK(print_circuit(parse_circuit(once)) == once);
    }
}
