// Command-line front end: simulation, checking, conversion, self-test and
// benchmarking for the affine-signature stabilizer simulator.

#include <chrono>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "affine/canonical.hpp"
#include "affine/circuit.hpp"
#include "affine/errors.hpp"
#include "affine/oracle.hpp"
#include "affine/pauli.hpp"
#include "affine/selftest.hpp"
#include "affine/signature.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomainFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

affine::Circuit load_circuit(const std::string& path) {
    return affine::parse_circuit(slurp(path));
}

affine::AffineSignature load_signature(const std::string& path) {
    return affine::parse_signature(slurp(path));
}

affine::BitVec parse_bits(const std::string& s, std::size_t want, const char* what) {
    if (s.size() != want)
        throw std::runtime_error(std::string(what) + " must have exactly " +
                                 std::to_string(want) + " bits");
    return affine::BitVec::from_string(s);
}

std::string approx(std::complex<double> z) {
    char buf[64];
    if (std::abs(z.imag()) < 5e-11) {
        std::snprintf(buf, sizeof buf, "%.10f", z.real());
        return buf;
    }
    if (std::abs(z.real()) < 5e-11) {
        std::snprintf(buf, sizeof buf, "%.10fi", z.imag());
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.10f%+.10fi", z.real(), z.imag());
    return buf;
}

std::string scalar_line(const affine::ExactScalar& s) {
    return s.to_string() + "  (≈ " + approx(s.to_complex()) + ")";
}

std::string prob_line(const affine::DyadicProb& p) {
    if (p.zero) return "0";
    std::string ring = (p.s == 0) ? "1" : ("2^(-" + std::to_string(p.s) + ")");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10f", p.value());
    return ring + "  (≈ " + buf + ")";
}

std::vector<affine::MeasuredBit> parse_measure_spec(const std::string& spec) {
    std::vector<affine::MeasuredBit> out;
    std::istringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos || item[0] != 'q')
            throw std::runtime_error("bad --measure entry '" + item + "', expected q<idx>=<bit>");
        const std::string qs = item.substr(1, eq - 1);
        const std::string bs = item.substr(eq + 1);
        if (bs != "0" && bs != "1")
            throw std::runtime_error("bad bit in --measure entry '" + item + "'");
        out.push_back({std::stoul(qs), bs == "1"});
    }
    return out;
}

const char* verdict_string(const affine::UnitaryVerdict& v) {
    switch (v.status) {
        case affine::UnitaryStatus::Singular: return "singular";
        case affine::UnitaryStatus::Unitary: return "unitary";
        case affine::UnitaryStatus::UnitaryAfterScaling: return "unitary-after-scaling";
    }
    return "?";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"affinesim: exact stabilizer-circuit simulator on affine signatures"};
    app.require_subcommand(1);

    std::string circuit_file, sig_file, in_bits, out_bits, measure_spec, expect;
    uint64_t seed = 0;
    std::size_t rand_qubits = 4, rand_gates = 16, rand_arity = 4;

    auto* sim = app.add_subcommand("simulate", "Sample one measurement outcome");
    sim->add_option("-c,--circuit", circuit_file, "circuit file")->required();
    sim->add_option("--in", in_bits, "input basis state, qubit 0 leftmost")->required();
    sim->add_option("--seed", seed, "RNG seed");

    auto* amp = app.add_subcommand("amplitude", "Exact transition amplitude");
    amp->add_option("-c,--circuit", circuit_file, "circuit file")->required();
    amp->add_option("--in", in_bits, "input basis state")->required();
    amp->add_option("--out", out_bits, "output basis state")->required();

    auto* prob = app.add_subcommand("prob", "Exact marginal outcome probability");
    prob->add_option("-c,--circuit", circuit_file, "circuit file")->required();
    prob->add_option("--in", in_bits, "input basis state")->required();
    prob->add_option("--measure", measure_spec, "q<idx>=<bit>, comma separated")->required();

    auto* check = app.add_subcommand("check", "Unitarity verdict for a signature file");
    check->add_option("-s,--signature", sig_file, "signature file")->required();
    check->add_option("--expect", expect, "fail unless the verdict matches")
        ->check(CLI::IsMember({"unitary", "singular", "unitary-after-scaling"}));

    auto* tab = app.add_subcommand("tableau", "Conjugation images of the X/Z generators");
    auto* tab_c = tab->add_option("-c,--circuit", circuit_file, "circuit file");
    auto* tab_s = tab->add_option("-s,--signature", sig_file, "signature file");
    tab_c->excludes(tab_s);

    auto* rnd = app.add_subcommand("random", "Emit a random circuit or signature");
    std::string rnd_kind;
    rnd->add_option("kind", rnd_kind, "circuit | signature")->required()
        ->check(CLI::IsMember({"circuit", "signature"}));
    rnd->add_option("--qubits", rand_qubits, "circuit qubit count");
    rnd->add_option("--gates", rand_gates, "circuit gate count");
    rnd->add_option("--arity", rand_arity, "signature arity");
    rnd->add_option("--seed", seed, "RNG seed");

    auto* selftest = app.add_subcommand("selftest", "Run every module's invariant suite");
    selftest->add_option("--seed", seed, "RNG seed");

    auto* bench = app.add_subcommand("bench", "Wall-clock for amplitude queries at scale");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sim->parsed()) {
            auto c = load_circuit(circuit_file);
            auto input = parse_bits(in_bits, c.n_qubits, "--in");
            std::cout << affine::sample_outcome(c, input, seed).to_string() << "\n";
            return kExitOk;
        }
        if (amp->parsed()) {
            auto c = load_circuit(circuit_file);
            auto input = parse_bits(in_bits, c.n_qubits, "--in");
            auto output = parse_bits(out_bits, c.n_qubits, "--out");
            std::cout << scalar_line(affine::amplitude(c, input, output)) << "\n";
            return kExitOk;
        }
        if (prob->parsed()) {
            auto c = load_circuit(circuit_file);
            auto input = parse_bits(in_bits, c.n_qubits, "--in");
            auto measured = parse_measure_spec(measure_spec);
            auto p = affine::marginal_probability(c, input, measured);
            if (p.zero) std::cout << "0\n";
            else std::cout << prob_line(p) << "\n";
            return kExitOk;
        }
        if (check->parsed()) {
            auto f = load_signature(sig_file);
            auto v = affine::check_unitary(f);
            std::string verdict = verdict_string(v);
            std::cout << verdict;
            if (v.status == affine::UnitaryStatus::UnitaryAfterScaling)
                std::cout << " p=" << v.required_p;
            std::cout << "\n";
            if (!expect.empty() && verdict != expect) {
                std::cerr << "expected verdict '" << expect << "'\n";
                return kExitDomainFailure;
            }
            return kExitOk;
        }
        if (tab->parsed()) {
            affine::AffineSignature f;
            if (!circuit_file.empty()) f = affine::circuit_signature(load_circuit(circuit_file));
            else if (!sig_file.empty()) f = load_signature(sig_file);
            else throw UsageError("tableau needs -c or -s");
            std::cout << affine::print_tableau(affine::clifford_tableau_of(f));
            return kExitOk;
        }
        if (rnd->parsed()) {
            if (rnd_kind == "circuit") {
                std::cout << affine::print_circuit(
                    affine::oracle::random_clifford_circuit(rand_qubits, rand_gates, seed));
            } else {
                std::cout << affine::print_signature(
                    affine::oracle::random_affine_signature(rand_arity, seed));
            }
            return kExitOk;
        }
        if (selftest->parsed()) {
            const int failures = affine::run_selftest(std::cout, seed ? seed : 20120822);
            if (failures) {
                std::cerr << failures << " selftest check(s) failed\n";
                return kExitDomainFailure;
            }
            std::cout << "selftest: all suites passed\n";
            return kExitOk;
        }
        if (bench->parsed()) {
            for (std::size_t n : {25u, 50u, 100u}) {
                for (std::size_t gates : {1000u, 10000u}) {
                    auto c = affine::oracle::random_clifford_circuit(n, gates, 97 + n + gates);
                    affine::BitVec zeros(n);
                    const auto t0 = std::chrono::steady_clock::now();
                    auto a = affine::amplitude(c, zeros, zeros);
                    const auto t1 = std::chrono::steady_clock::now();
                    (void)a;
                    const double ms =
                        std::chrono::duration<double, std::milli>(t1 - t0).count();
                    std::printf("bench n=%zu gates=%zu ms=%.3f\n", n, gates, ms);
                }
            }
            return kExitOk;
        }
    } catch (const affine::ParseError& e) {
        std::cerr << "parse error at line " << e.line << ", column " << e.column << ": "
                  << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const affine::SingularDetected& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainFailure;
    }
    return kExitUsage;
}
