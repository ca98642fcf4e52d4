// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sys/resource.h>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "affine/canonical.hpp"
#include "affine/circuit.hpp"
#include "affine/errors.hpp"
#include "affine/oracle.hpp"
#include "affine/pauli.hpp"
#include "affine/verify.hpp"

using namespace affine;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Timer {
    Clock::time_point start = Clock::now();
    double seconds() const {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }
};

void report(int idx, bool pass, const std::string& what, double secs, double budget) {
    const bool in_budget = budget <= 0.0 || secs < budget;
    if (!pass || !in_budget) ++g_failures;
    std::string suffix;
    if (budget > 0.0) suffix = " / budget " + std::to_string(static_cast<int>(budget)) + "s";
    std::printf("%s criterion %d: %s (%.2fs%s)\n", (pass && in_budget) ? "PASS" : "FAIL", idx,
                what.c_str(), secs, suffix.c_str());
}

AffineSignature h_sig() { return gate_signature(Gate::one_qubit(GateKind::H, 0), 1); }
AffineSignature p_sig() { return gate_signature(Gate::one_qubit(GateKind::P, 0), 1); }
AffineSignature cnot_sig() { return gate_signature(Gate::two_qubit(GateKind::CNOT, 0, 1), 2); }

void criterion1_generators() {
    Timer t;
    const double s = 1.0 / std::sqrt(2.0);
    DenseMatrix h_ref(1);
    h_ref.at(0, 0) = s; h_ref.at(0, 1) = s;
    h_ref.at(1, 0) = s; h_ref.at(1, 1) = -s;
    DenseMatrix p_ref(1);
    p_ref.at(0, 0) = 1.0; p_ref.at(1, 1) = {0.0, 1.0};
    DenseMatrix c_ref(2);
    c_ref.at(0, 0) = c_ref.at(1, 1) = c_ref.at(2, 3) = c_ref.at(3, 2) = 1.0;

    double dev = 0.0;
    dev = std::max(dev, oracle::signature_vs_dense_dev(h_sig(), h_ref));
    dev = std::max(dev, oracle::signature_vs_dense_dev(p_sig(), p_ref));
    dev = std::max(dev, oracle::signature_vs_dense_dev(cnot_sig(), c_ref));
    std::ostringstream msg;
    msg << "generator matrices match their displays entrywise, max dev " << dev;
    report(1, dev <= 1e-12, msg.str(), t.seconds(), 1.0);
}

void criterion2_composition() {
    Timer t;
    std::mt19937_64 rng(1002);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + rng() % 4;
        auto c = oracle::random_clifford_circuit(n, rng() % 21, rng());
        worst = std::max(worst, oracle::circuit_vs_dense_dev(c));
    }
    std::ostringstream msg;
    msg << "200 random circuits (n<=4, len<=20), max deviation " << worst;
    report(2, worst <= 1e-9, msg.str(), t.seconds(), 30.0);
}

void criterion3_closure() {
    Timer t;
    std::mt19937_64 rng(1003);
    double worst = 0.0;
    bool invariants_ok = true;
    std::string why;
    for (int i = 0; i < 500; ++i) {
        const std::size_t k = 1 + rng() % 10;
        auto f = oracle::random_affine_signature(k, rng());

        const std::size_t k2 = rng() % (std::min<std::size_t>(10, 14 - k) + 1);
        auto g = oracle::random_affine_signature(k2, rng());
        worst = std::max(worst, oracle::tensor_pointwise_dev(f, g));
        invariants_ok &= check_canonical_invariants(tensor(f, g), &why);

        std::vector<std::size_t> sigma(k);
        for (std::size_t j = 0; j < k; ++j) sigma[j] = j;
        std::shuffle(sigma.begin(), sigma.end(), rng);
        worst = std::max(worst, oracle::permute_pointwise_dev(f, sigma));
        invariants_ok &= check_canonical_invariants(permute(f, sigma), &why);

        if (k >= 2) {
            const std::size_t j = rng() % k;
            const std::size_t l = (j + 1 + rng() % (k - 1)) % k;
            worst = std::max(worst, oracle::identify_pointwise_dev(f, j, l));
            invariants_ok &= check_canonical_invariants(identify(f, j, l), &why);
        }
        const std::size_t j = rng() % k;
        worst = std::max(worst, oracle::marginalize_pointwise_dev(f, j));
        invariants_ok &= check_canonical_invariants(marginalize(f, j), &why);
    }
    std::ostringstream msg;
    msg << "closure of 500 random signatures (arity <= 10), max pointwise dev " << worst;
    if (!invariants_ok) msg << "; invariant violation: " << why;
    report(3, worst <= 1e-10 && invariants_ok, msg.str(), t.seconds(), 60.0);
}

void criterion4_unitarity() {
    Timer t;
    std::mt19937_64 rng(1004);
    int failures = 0;
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 1 + rng() % 4;
        auto f = circuit_signature(oracle::random_clifford_circuit(n, 2 + rng() % 24, rng()));
        f = f.scaled(ExactScalar::make(static_cast<int>(rng() % 11) - 5,
                                       static_cast<int>(rng() & 7u)));
        try {
            auto form = extract_form(f);
            if (!is_nonsingular(cf_matrix(form))) { ++failures; continue; }
            auto m = signature_matrix(unitarize(f));
            const double dev = (m * m.adjoint()).max_abs_diff_from_identity();
            worst = std::max(worst, dev);
            if (dev > 1e-9) ++failures;
        } catch (const SingularDetected&) {
            ++failures;
        }
    }
    std::ostringstream msg;
    msg << "300 rescaled circuit signatures (n<=4): unitarize, UU*=I dev " << worst << ", "
        << failures << " failures";
    report(4, failures == 0 && worst <= 1e-9, msg.str(), t.seconds(), 60.0);
}

void criterion5_nonsingular_equivalence() {
    Timer t;
    std::mt19937_64 rng(1005);
    int disagreements = 0, checked = 0, nonsingular_seen = 0;
    auto check_one = [&](const AffineSignature& f, std::size_t n) {
        if (f.is_zero()) return;
        ++checked;
        const bool dense_ns = oracle::dense_rank(signature_matrix(f)) == (std::size_t(1) << n);
        const bool claimed = check_unitary(f).status != UnitaryStatus::Singular;
        if (dense_ns != claimed) ++disagreements;
        if (dense_ns) ++nonsingular_seen;
    };
    for (int i = 0; i < 150; ++i) {
        const std::size_t n = 1 + rng() % 3;
        check_one(oracle::random_affine_signature(2 * n, rng()), n);
    }
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 1 + rng() % 3;
        check_one(circuit_signature(oracle::random_clifford_circuit(n, rng() % 16, rng())), n);
    }
    for (int i = 0; i < 50; ++i) {
        // Constructed singular cases: an input-only constraint pinned to 0.
        const std::size_t n = 1 + rng() % 3;
        auto raw = raw::RawSignature::free_of(2 * n);
        BitVec row(2 * n);
        row.set(rng() % n, true);
        raw.add_constraint(std::move(row), rng() & 1u);
        check_one(AffineSignature::canonicalize(std::move(raw)), n);
    }
    std::ostringstream msg;
    msg << checked << " signatures (n<=3, incl. constructed singular): " << disagreements
        << " disagreements, " << nonsingular_seen << " nonsingular";
    report(5, disagreements == 0 && nonsingular_seen > 20, msg.str(), t.seconds(), 0.0);
}

void criterion6_tableau() {
    Timer t;
    std::mt19937_64 rng(1006);
    int violations = 0;
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 1 + rng() % 4;
        auto u = unitarize(
            circuit_signature(oracle::random_clifford_circuit(n, 2 + rng() % 20, rng())));
        try {
            auto tab = clifford_tableau_of(u);
            auto m = signature_matrix(u);
            auto mdag = m.adjoint();
            for (std::size_t j = 0; j < n; ++j) {
                worst = std::max(worst, DenseMatrix::max_abs_diff(
                    oracle::dense_from_pauli(tab.x_images[j]),
                    m * oracle::dense_from_pauli(pauli_single(PauliKind::X, j, n)) * mdag));
                worst = std::max(worst, DenseMatrix::max_abs_diff(
                    oracle::dense_from_pauli(tab.z_images[j]),
                    m * oracle::dense_from_pauli(pauli_single(PauliKind::Z, j, n)) * mdag));
            }
            if (!check_symplectic(tab)) ++violations;
        } catch (const InternalTheoremViolation&) {
            ++violations;
        }
    }
    std::ostringstream msg;
    msg << "500 tableaus (n<=4): " << violations << " violations, image dev " << worst;
    report(6, violations == 0 && worst <= 1e-9, msg.str(), t.seconds(), 0.0);
}

void criterion7_one_qubit_clifford() {
    Timer t;
    auto key_mod_phase = [](const AffineSignature& f) {
        auto normalized = f.scaled(ExactScalar::make(0, (8 - f.scalar().q()) % 8));
        return print_signature(normalized);
    };
    std::map<std::string, AffineSignature> seen;
    std::vector<AffineSignature> worklist{h_sig(), p_sig()};
    for (auto& f : worklist) seen.emplace(key_mod_phase(f), f);
    while (!worklist.empty()) {
        auto f = worklist.back();
        worklist.pop_back();
        std::vector<AffineSignature> snapshot;
        snapshot.reserve(seen.size());
        for (auto& [k, v] : seen) snapshot.push_back(v);
        for (const auto& g : snapshot) {
            for (const auto& prod : {compose(f, g), compose(g, f)}) {
                auto key = key_mod_phase(prod);
                if (!seen.count(key)) {
                    seen.emplace(key, prod);
                    worklist.push_back(prod);
                }
            }
        }
    }
    bool all_unitary = true;
    for (auto& [k, f] : seen)
        all_unitary &= (check_unitary(f).status == UnitaryStatus::Unitary);
    std::ostringstream msg;
    msg << "closure of {H, P} under composition mod phase has " << seen.size()
        << " elements, all unitary: " << (all_unitary ? "yes" : "no");
    report(7, seen.size() == 24 && all_unitary, msg.str(), t.seconds(), 0.0);
}

void criterion8_probability_law() {
    Timer t;
    std::mt19937_64 rng(1008);
    bool dyadic_ok = true, dense_ok = true, sums_ok = true;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + rng() % 3;
        auto c = oracle::random_clifford_circuit(n, rng() % 16, rng());
        BitVec in(n);
        for (std::size_t q = 0; q < n; ++q) in.set(q, rng() & 1u);
        auto state = oracle::dense_state(c, in);

        std::vector<MeasuredBit> measured;
        for (std::size_t q = 0; q < n; ++q)
            if (rng() & 1u) measured.push_back({q, (rng() & 1u) != 0});
        DyadicProb p;
        try {
            p = marginal_probability(c, in, measured);
        } catch (const InternalInvariantViolation&) {
            dyadic_ok = false;
            continue;
        }
        if (!p.zero && p.s > static_cast<unsigned>(2 * n)) dyadic_ok = false;
        double expected = 0.0;
        for (std::size_t idx = 0; idx < state.size(); ++idx) {
            bool match = true;
            for (const auto& mb : measured)
                if (((idx >> (n - 1 - mb.qubit)) & 1u) != (mb.bit ? 1u : 0u)) match = false;
            if (match) expected += std::norm(state[idx]);
        }
        worst = std::max(worst, std::abs(p.value() - expected));
        if (std::abs(p.value() - expected) > 1e-9) dense_ok = false;

        // Exact ring sum over all full outcomes.
        const unsigned smax = 2 * n + 4;
        uint64_t num = 0;
        for (std::size_t idx = 0; idx < (std::size_t(1) << n); ++idx) {
            std::vector<MeasuredBit> all;
            for (std::size_t q = 0; q < n; ++q)
                all.push_back({q, ((idx >> (n - 1 - q)) & 1u) != 0});
            auto full = marginal_probability(c, in, all);
            if (full.zero) continue;
            if (full.s > smax) { sums_ok = false; break; }
            num += uint64_t(1) << (smax - full.s);
        }
        if (num != (uint64_t(1) << smax)) sums_ok = false;
    }
    std::ostringstream msg;
    msg << "200 random circuits (n<=3): dyadic " << (dyadic_ok ? "yes" : "NO") << ", dense dev "
        << worst << ", exact unit sums " << (sums_ok ? "yes" : "NO");
    report(8, dyadic_ok && dense_ok && sums_ok, msg.str(), t.seconds(), 0.0);
}

std::size_t peak_rss_kb() {
    struct rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) != 0) return 0;
    return static_cast<std::size_t>(usage.ru_maxrss);  // KB on Linux
}

void criterion9_performance() {
    Timer total;
    auto c = oracle::random_clifford_circuit(100, 10000, 1009);
    BitVec zeros(100);

    Timer amp_timer;
    auto a = amplitude(c, zeros, zeros);
    const double amp_secs = amp_timer.seconds();
    (void)a;

    Timer prob_timer;
    auto p = marginal_probability(c, zeros, {{0, false}});
    const double prob_secs = prob_timer.seconds();
    (void)p;

    const std::size_t peak_kb = peak_rss_kb();
    const bool mem_ok = peak_kb == 0 || peak_kb < 1024 * 1024;  // < 1 GB when measurable
    std::ostringstream msg;
    msg << "100 qubits / 10k gates: amplitude " << amp_secs << "s (<1s), marginal " << prob_secs
        << "s (<5s), peak " << peak_kb / 1024 << " MB";
    report(9, amp_secs < 1.0 && prob_secs < 5.0 && mem_ok, msg.str(), total.seconds(), 0.0);
}

void criterion10_roundtrips() {
    Timer t;
    std::mt19937_64 rng(1010);
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
        auto c = oracle::random_clifford_circuit(1 + rng() % 8, rng() % 30, rng());
        const auto text = print_circuit(c);
        ok &= (print_circuit(parse_circuit(text)) == text);
    }
    for (int i = 0; i < 100; ++i) {
        auto f = oracle::random_affine_signature(rng() % 11, rng());
        const auto text = print_signature(f);
        ok &= (parse_signature(text) == f);
        ok &= (print_signature(parse_signature(text)) == text);
    }
    report(10, ok, "100 circuit and 100 signature files round-trip bit-exactly", t.seconds(), 0.0);
}

}  // namespace

int main() {
    criterion1_generators();
    criterion2_composition();
    criterion3_closure();
    criterion4_unitarity();
    criterion5_nonsingular_equivalence();
    criterion6_tableau();
    criterion7_one_qubit_clifford();
    criterion8_probability_law();
    criterion9_performance();
    criterion10_roundtrips();
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
