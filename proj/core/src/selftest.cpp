#include "affine/selftest.hpp"

#include <cmath>
#include <complex>
#include <ostream>
#include <random>

#include "affine/canonical.hpp"
#include "affine/circuit.hpp"
#include "affine/errors.hpp"
#include "affine/oracle.hpp"
#include "affine/pauli.hpp"
#include "affine/verify.hpp"

namespace affine {

namespace {

class Suite {
public:
    Suite(std::ostream& out, const char* name) : out_(out), name_(name) {}
    ~Suite() {
        if (failures_ == 0) out_ << "selftest " << name_ << ": ok (" << checks_ << " checks)\n";
    }
    void check(bool cond, const std::string& what) {
        ++checks_;
        if (!cond) {
            ++failures_;
            out_ << "selftest " << name_ << ": FAIL " << what << "\n";
        }
    }
    int failures() const { return failures_; }

private:
    std::ostream& out_;
    const char* name_;
    int checks_ = 0;
    int failures_ = 0;
};

F2Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    F2Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rng() & 1u);
    return m;
}

/// Row space as the set of all xor combinations (dims kept tiny).
std::vector<BitVec> span_of(const F2Matrix& m) {
    std::vector<BitVec> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << m.rows()); ++mask) {
        BitVec v(m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            if ((mask >> i) & 1u) v ^= m.row(i);
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end(), [](const BitVec& a, const BitVec& b) {
        return a.to_string() < b.to_string();
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int suite_f2core(std::ostream& out, uint64_t seed) {
    Suite s(out, "f2core");
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t rows = rng() % 7, cols = 1 + rng() % 9;
        F2Matrix m = random_matrix(rng, rows, cols);
        auto red = rref(m);
        s.check(span_of(red.r) == span_of(m), "rref preserves the row space");
        auto again = rref(red.r);
        s.check(again.r == red.r && again.rank == red.rank, "rref is idempotent");
    }
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = rng() % 6, cols = 1 + rng() % 8;
        F2Matrix a = random_matrix(rng, rows, cols);
        BitVec b(rows);
        for (std::size_t i = 0; i < rows; ++i) b.set(i, rng() & 1u);
        auto sol = solve_affine(a, b);
        std::size_t count = 0;
        for (std::size_t v = 0; v < (std::size_t(1) << cols); ++v) {
            BitVec x(cols);
            for (std::size_t j = 0; j < cols; ++j) x.set(j, (v >> j) & 1u);
            bool sat = true;
            for (std::size_t i = 0; i < rows; ++i)
                if (BitVec::parity_and(a.row(i), x) != b.get(i)) { sat = false; break; }
            if (sat) ++count;
        }
        if (!sol) {
            s.check(count == 0, "infeasible verdict matches exhaustive search");
            continue;
        }
        s.check(count == (std::size_t(1) << sol->kernel_basis.size()),
                "solution count is 2^(kernel size)");
        BitVec probe = sol->particular;
        for (const auto& kv : sol->kernel_basis)
            if (rng() & 1u) probe ^= kv;
        bool sat = true;
        for (std::size_t i = 0; i < rows; ++i)
            if (BitVec::parity_and(a.row(i), probe) != b.get(i)) sat = false;
        s.check(sat, "sampled solution satisfies the system");
    }
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        F2Matrix m = random_matrix(rng, n, n);
        bool dependent = false;
        for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
            BitVec v(n);
            for (std::size_t i = 0; i < n; ++i)
                if ((mask >> i) & 1u) v ^= m.row(i);
            if (!v.any()) { dependent = true; break; }
        }
        s.check(is_nonsingular(m) == !dependent, "is_nonsingular vs exhaustive null search");
    }
    return s.failures();
}

int suite_exact_scalar(std::ostream& out, uint64_t seed) {
    Suite s(out, "exact_scalar");
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        const int p1 = static_cast<int>(rng() % 81) - 40, p2 = static_cast<int>(rng() % 81) - 40;
        auto a = ExactScalar::make(p1, static_cast<int>(rng() & 7u));
        auto b = ExactScalar::make(p2, static_cast<int>(rng() & 7u));
        const auto lhs = (a * b).to_complex();
        const auto rhs = a.to_complex() * b.to_complex();
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    s.check(worst <= 1e-12, "(p,q) -> 2^(p/2) e^{i pi q/4} is multiplicative");
    s.check(ExactScalar::zero() * ExactScalar::make(3, 5) == ExactScalar::zero(),
            "zero is absorbing and canonical");
    return s.failures();
}

int suite_signature(std::ostream& out, uint64_t seed) {
    Suite s(out, "signature");
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t k = 1 + rng() % 8;
        auto f = oracle::random_affine_signature(k, rng());
        std::string why;
        s.check(check_canonical_invariants(f, &why), "random signature invariants: " + why);

        auto g = oracle::random_affine_signature(rng() % (9 - std::min<std::size_t>(k, 8)), rng());
        s.check(oracle::tensor_pointwise_dev(f, g) <= 1e-10, "tensor pointwise");
        std::string why2;
        s.check(check_canonical_invariants(tensor(f, g), &why2), "tensor invariants: " + why2);

        std::vector<std::size_t> sigma(k);
        for (std::size_t j = 0; j < k; ++j) sigma[j] = j;
        std::shuffle(sigma.begin(), sigma.end(), rng);
        s.check(oracle::permute_pointwise_dev(f, sigma) <= 1e-10, "permute pointwise");

        if (k >= 2) {
            std::size_t j = rng() % k, l = rng() % k;
            while (l == j) l = rng() % k;
            s.check(oracle::identify_pointwise_dev(f, j, l) <= 1e-10, "identify pointwise");
            std::string why3;
            s.check(check_canonical_invariants(identify(f, j, l), &why3),
                    "identify invariants: " + why3);
        }
        const std::size_t j = rng() % k;
        s.check(oracle::marginalize_pointwise_dev(f, j) <= 1e-10, "marginalize pointwise");
        std::string why4;
        s.check(check_canonical_invariants(marginalize(f, j), &why4),
                "marginalize invariants: " + why4);

        s.check(conjugate(conjugate(f)) == f, "conjugate is an involution");
    }
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng() % 2;
        auto f = circuit_signature(oracle::random_clifford_circuit(n, 5 + rng() % 8, rng()));
        auto g = circuit_signature(oracle::random_clifford_circuit(n, 5 + rng() % 8, rng()));
        s.check(oracle::compose_matrix_dev(f, g) <= 1e-9, "compose equals the matrix product");
        s.check(oracle::signature_vs_dense_dev(adjoint(f), signature_matrix(f).adjoint()) <= 1e-12,
                "adjoint equals the conjugate transpose");
    }
    return s.failures();
}

int suite_canonical(std::ostream& out, uint64_t seed) {
    Suite s(out, "canonical");
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 3;
        auto f = circuit_signature(oracle::random_clifford_circuit(n, 4 + rng() % 12, rng()));
        f = f.scaled(ExactScalar::make(static_cast<int>(rng() % 9) - 4, static_cast<int>(rng() & 7u)));
        auto verdict = check_unitary(f);
        s.check(verdict.status != UnitaryStatus::Singular, "circuit signatures are nonsingular");
        auto form = extract_form(f);
        s.check(is_nonsingular(cf_matrix(form)), "check matrix is nonsingular");
        auto u = unitarize(f);
        auto m = signature_matrix(u);
        s.check((m * m.adjoint()).max_abs_diff_from_identity() <= 1e-9,
                "unitarized matrix satisfies U U* = I");
    }
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 3;
        auto f = oracle::random_affine_signature(2 * n, rng());
        if (f.is_zero()) continue;
        const bool dense_nonsingular =
            oracle::dense_rank(signature_matrix(f)) == (std::size_t(1) << n);
        const bool claims = check_unitary(f).status != UnitaryStatus::Singular;
        s.check(dense_nonsingular == claims, "nonsingularity agrees with numeric rank");
    }
    return s.failures();
}

int suite_pauli(std::ostream& out, uint64_t seed) {
    Suite s(out, "pauli");
    std::mt19937_64 rng(seed);
    auto random_pauli = [&](std::size_t n) {
        PauliOperator p = PauliOperator::identity(n);
        for (std::size_t q = 0; q < n; ++q) {
            p.e.set(q, rng() & 1u);
            p.r.set(q, rng() & 1u);
        }
        p.c = static_cast<uint8_t>(rng() & 3u);
        return p;
    };
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        auto p = random_pauli(n);
        s.check(oracle::signature_vs_dense_dev(pauli_to_signature(p),
                                               oracle::dense_from_pauli(p)) <= 1e-12,
                "signature matches the entry normal form");
        auto rec = recognize_pauli(pauli_to_signature(p));
        s.check(rec.ok && rec.op == p && rec.residual == ExactScalar::one(),
                "recognition round-trips");
    }
    {
        double worst = 0.0;
        for (int lhs = 0; lhs < 16; ++lhs) {
            for (int rhs = 0; rhs < 16; ++rhs) {
                PauliOperator p1{1, BitVec(1), BitVec(1), static_cast<uint8_t>(lhs & 3)};
                p1.e.set(0, (lhs >> 3) & 1); p1.r.set(0, (lhs >> 2) & 1);
                PauliOperator p2{1, BitVec(1), BitVec(1), static_cast<uint8_t>(rhs & 3)};
                p2.e.set(0, (rhs >> 3) & 1); p2.r.set(0, (rhs >> 2) & 1);
                worst = std::max(worst, DenseMatrix::max_abs_diff(
                    oracle::dense_from_pauli(pauli_mul(p1, p2)),
                    oracle::dense_from_pauli(p1) * oracle::dense_from_pauli(p2)));
            }
        }
        s.check(worst <= 1e-12, "single-qubit product table (all 256 ordered pairs)");
    }
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        auto p1 = random_pauli(n), p2 = random_pauli(n);
        s.check(DenseMatrix::max_abs_diff(
                    oracle::dense_from_pauli(pauli_mul(p1, p2)),
                    oracle::dense_from_pauli(p1) * oracle::dense_from_pauli(p2)) <= 1e-12,
                "product matches dense multiplication");
        const bool sign_formula =
            BitVec::parity_and(p1.e, p2.r) ^ BitVec::parity_and(p2.e, p1.r);
        s.check(anticommutes(p1, p2) == sign_formula, "commutation dichotomy formula");
        auto ab = pauli_mul(p1, p2);
        auto ba = pauli_mul(p2, p1);
        s.check(ab.e == ba.e && ab.r == ba.r &&
                    ((ab.c == ba.c) == !anticommutes(p1, p2)),
                "P1 P2 = +-P2 P1");
    }
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng() % 3;
        auto u = unitarize(circuit_signature(oracle::random_clifford_circuit(n, 4 + rng() % 10, rng())));
        CliffordTableau t;
        try {
            t = clifford_tableau_of(u);
        } catch (const InternalTheoremViolation&) {
            s.check(false, "tableau extraction raised a theorem violation");
            continue;
        }
        std::string why;
        s.check(check_symplectic(t, &why), "tableau symplectic invariant: " + why);
        const auto m = signature_matrix(u);
        const auto mdag = m.adjoint();
        for (std::size_t j = 0; j < n; ++j) {
            auto dx = m * oracle::dense_from_pauli(pauli_single(PauliKind::X, j, n)) * mdag;
            auto dz = m * oracle::dense_from_pauli(pauli_single(PauliKind::Z, j, n)) * mdag;
            s.check(DenseMatrix::max_abs_diff(oracle::dense_from_pauli(t.x_images[j]), dx) <= 1e-9,
                    "X image matches dense conjugation");
            s.check(DenseMatrix::max_abs_diff(oracle::dense_from_pauli(t.z_images[j]), dz) <= 1e-9,
                    "Z image matches dense conjugation");
        }
    }
    return s.failures();
}

int suite_circuit(std::ostream& out, uint64_t seed) {
    Suite s(out, "circuit");
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 3;
        auto c = oracle::random_clifford_circuit(n, rng() % 16, rng());
        s.check(oracle::circuit_vs_dense_dev(c) <= 1e-9, "circuit signature vs dense product");
    }
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 3;
        auto c = oracle::random_clifford_circuit(n, rng() % 12, rng());
        AffineSignature folded = AffineSignature::identity_map(n);
        for (const auto& g : c.gates) folded = compose(gate_signature(g, n), folded);
        s.check(circuit_signature(c) == folded,
                "incremental construction equals the composition fold");
    }
    // Macro fidelity against the textbook matrices; y carries -i.
    {
        Circuit cx{1, {Gate::one_qubit(GateKind::X, 0)}};
        DenseMatrix x_ref(1); x_ref.at(0, 1) = 1.0; x_ref.at(1, 0) = 1.0;
        s.check(DenseMatrix::max_abs_diff(oracle::dense_circuit(cx), x_ref) <= 1e-12 &&
                    oracle::circuit_vs_dense_dev(cx) <= 1e-12,
                "x macro");
        Circuit cy{1, {Gate::one_qubit(GateKind::Y, 0)}};
        DenseMatrix y_ref(1); y_ref.at(0, 1) = {0.0, -1.0}; y_ref.at(1, 0) = {0.0, 1.0};
        DenseMatrix scaled = y_ref;
        for (auto& v : scaled.a) v *= std::complex<double>(0.0, 1.0);
        s.check(DenseMatrix::max_abs_diff(oracle::dense_circuit(cy), scaled) <= 1e-12 &&
                    oracle::circuit_vs_dense_dev(cy) <= 1e-12,
                "y macro is i times Y");
        Circuit cz{2, {Gate::two_qubit(GateKind::CZ, 0, 1)}};
        DenseMatrix cz_ref(2);
        for (std::size_t i = 0; i < 4; ++i) cz_ref.at(i, i) = (i == 3) ? -1.0 : 1.0;
        s.check(DenseMatrix::max_abs_diff(oracle::dense_circuit(cz), cz_ref) <= 1e-12 &&
                    oracle::circuit_vs_dense_dev(cz) <= 1e-12,
                "cz macro");
        Circuit czg{1, {Gate::one_qubit(GateKind::Z, 0)}};
        DenseMatrix z_ref(1); z_ref.at(0, 0) = 1.0; z_ref.at(1, 1) = -1.0;
        s.check(DenseMatrix::max_abs_diff(oracle::dense_circuit(czg), z_ref) <= 1e-12 &&
                    oracle::circuit_vs_dense_dev(czg) <= 1e-12,
                "z macro");
    }
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + rng() % 3;
        auto c = oracle::random_clifford_circuit(n, rng() % 14, rng());
        BitVec input(n);
        for (std::size_t q = 0; q < n; ++q) input.set(q, rng() & 1u);
        auto state = oracle::dense_state(c, input);

        std::vector<MeasuredBit> measured;
        for (std::size_t q = 0; q < n; ++q)
            if (rng() & 1u) measured.push_back({q, (rng() & 1u) != 0});
        double expected = 0.0;
        for (std::size_t idx = 0; idx < state.size(); ++idx) {
            bool match = true;
            for (const auto& mb : measured)
                if (((idx >> (n - 1 - mb.qubit)) & 1u) != (mb.bit ? 1u : 0u)) match = false;
            if (match) expected += std::norm(state[idx]);
        }
        auto got = marginal_probability(c, input, measured);
        s.check(std::abs(got.value() - expected) <= 1e-9, "marginal matches dense state sums");

        // Full-outcome probabilities: exact dyadics summing to exactly one.
        uint64_t num = 0;
        const unsigned smax = 2 * n + 2;
        bool in_range = true;
        for (std::size_t idx = 0; idx < (std::size_t(1) << n); ++idx) {
            BitVec outcome(n);
            for (std::size_t q = 0; q < n; ++q) outcome.set(q, ((idx >> (n - 1 - q)) & 1u) != 0);
            std::vector<MeasuredBit> all;
            for (std::size_t q = 0; q < n; ++q) all.push_back({q, outcome.get(q)});
            auto p = marginal_probability(c, input, all);
            auto amp = amplitude(c, input, outcome);
            s.check(amp.is_zero() == p.zero &&
                        (amp.is_zero() || amp.p() == -static_cast<int>(p.s)),
                    "squared amplitude equals the full-outcome probability");
            if (p.zero) continue;
            if (p.s > smax) { in_range = false; break; }
            num += uint64_t(1) << (smax - p.s);
        }
        s.check(in_range && num == (uint64_t(1) << smax), "full outcomes sum to exactly one");
    }
    {
        // Deterministic outcomes and determinism per seed.
        Circuit id2{2, {}};
        s.check(sample_outcome(id2, BitVec::from_string("01"), 7) == BitVec::from_string("01"),
                "empty circuit echoes its input");
        auto ghz = parse_circuit("qubits 2\nh 0\ncnot 0 1\n");
        auto a = sample_outcome(ghz, BitVec(2), 42), b = sample_outcome(ghz, BitVec(2), 42);
        s.check(a == b, "same seed, same outcome");
        int zeros = 0;
        for (uint64_t sd = 0; sd < 400; ++sd) {
            auto o = sample_outcome(ghz, BitVec(2), sd);
            s.check(o == BitVec(2) || o == BitVec::from_string("11"),
                    "entangled outcomes are correlated");
            if (o == BitVec(2)) ++zeros;
        }
        s.check(zeros > 120 && zeros < 280, "outcome frequencies are balanced");
    }
    for (int trial = 0; trial < 50; ++trial) {
        auto c = oracle::random_clifford_circuit(1 + rng() % 4, rng() % 12, rng());
        s.check(print_circuit(parse_circuit(print_circuit(c))) == print_circuit(c),
                "circuit format round-trip");
        auto f = oracle::random_affine_signature(rng() % 7, rng());
        s.check(print_signature(parse_signature(print_signature(f))) == print_signature(f) &&
                    parse_signature(print_signature(f)) == f,
                "signature format round-trip");
    }
    return s.failures();
}

}  // namespace

int run_selftest(std::ostream& out, uint64_t seed) {
    int failures = 0;
    failures += suite_f2core(out, seed + 1);
    failures += suite_exact_scalar(out, seed + 2);
    failures += suite_signature(out, seed + 3);
    failures += suite_canonical(out, seed + 4);
    failures += suite_pauli(out, seed + 5);
    failures += suite_circuit(out, seed + 6);
    return failures;
}

}  // namespace affine
