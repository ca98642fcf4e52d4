#include "affine/circuit.hpp"

#include <cassert>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "affine/errors.hpp"

namespace affine {

namespace {

struct Token {
    std::string text;
    std::size_t col;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
        toks.push_back({line.substr(start, i - start), start + 1});
    }
    return toks;
}

std::size_t parse_index(const Token& t, std::size_t line_no, const char* what) {
    try {
        std::size_t pos = 0;
        unsigned long v = std::stoul(t.text, &pos);
        if (pos != t.text.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError(std::string("expected ") + what + ", got '" + t.text + "'", line_no, t.col);
    }
}

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "h";
        case GateKind::P: return "p";
        case GateKind::CNOT: return "cnot";
        case GateKind::X: return "x";
        case GateKind::Y: return "y";
        case GateKind::Z: return "z";
        case GateKind::CZ: return "cz";
    }
    return "?";
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    Circuit c;
    bool have_header = false;

    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty()) continue;

        if (!have_header) {
            if (toks[0].text != "qubits")
                throw ParseError("first line must be 'qubits <n>'", line_no, toks[0].col);
            if (toks.size() != 2)
                throw ParseError("'qubits' takes exactly one operand", line_no, toks[0].col);
            c.n_qubits = parse_index(toks[1], line_no, "qubit count");
            if (c.n_qubits == 0)
                throw ParseError("qubit count must be positive", line_no, toks[1].col);
            have_header = true;
            continue;
        }

        static const std::unordered_map<std::string, GateKind> kinds = {
            {"h", GateKind::H},   {"p", GateKind::P}, {"cnot", GateKind::CNOT},
            {"x", GateKind::X},   {"y", GateKind::Y}, {"z", GateKind::Z},
            {"cz", GateKind::CZ},
        };
        auto it = kinds.find(toks[0].text);
        if (it == kinds.end())
            throw ParseError("unknown gate '" + toks[0].text + "'", line_no, toks[0].col);
        GateKind kind = it->second;
        const std::size_t want = (kind == GateKind::CNOT || kind == GateKind::CZ) ? 2 : 1;
        if (toks.size() != want + 1)
            throw ParseError("gate '" + toks[0].text + "' takes " + std::to_string(want) +
                                 " operand(s)", line_no, toks[0].col);
        std::size_t q0 = parse_index(toks[1], line_no, "qubit index");
        if (q0 >= c.n_qubits)
            throw ParseError("qubit index out of range", line_no, toks[1].col);
        if (want == 2) {
            std::size_t q1 = parse_index(toks[2], line_no, "qubit index");
            if (q1 >= c.n_qubits)
                throw ParseError("qubit index out of range", line_no, toks[2].col);
            if (q1 == q0)
                throw ParseError("duplicate operands", line_no, toks[2].col);
            c.gates.push_back(Gate::two_qubit(kind, q0, q1, line_no));
        } else {
            c.gates.push_back(Gate::one_qubit(kind, q0, line_no));
        }
    }
    if (!have_header) throw ParseError("missing 'qubits <n>' header", line_no + 1, 1);
    return c;
}

std::string print_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "qubits " << c.n_qubits << "\n";
    for (const auto& g : c.gates) {
        out << gate_name(g.kind) << ' ' << g.q0;
        if (g.is_two_qubit()) out << ' ' << g.q1;
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Gate lowering.

namespace {

/// Expands macro gates over {H, P, CNOT}. The y expansion is z then x, which
/// is the Y matrix times the global phase -i.
void expand_gate(const Gate& g, std::vector<Gate>& out) {
    switch (g.kind) {
        case GateKind::H:
        case GateKind::P:
        case GateKind::CNOT:
            out.push_back(g);
            break;
        case GateKind::Z:
            out.push_back(Gate::one_qubit(GateKind::P, g.q0));
            out.push_back(Gate::one_qubit(GateKind::P, g.q0));
            break;
        case GateKind::X:
            out.push_back(Gate::one_qubit(GateKind::H, g.q0));
            expand_gate(Gate::one_qubit(GateKind::Z, g.q0), out);
            out.push_back(Gate::one_qubit(GateKind::H, g.q0));
            break;
        case GateKind::Y:
            expand_gate(Gate::one_qubit(GateKind::X, g.q0), out);
            expand_gate(Gate::one_qubit(GateKind::Z, g.q0), out);
            break;
        case GateKind::CZ:
            out.push_back(Gate::one_qubit(GateKind::H, g.q1));
            out.push_back(Gate::two_qubit(GateKind::CNOT, g.q0, g.q1));
            out.push_back(Gate::one_qubit(GateKind::H, g.q1));
            break;
    }
}

AffineSignature h_core() {
    auto f = raw::RawSignature::free_of(2);
    f.set_cross(0, 1, true);
    f.scalar.mul_pow2_half(-1);
    return AffineSignature::canonicalize(std::move(f));
}

AffineSignature p_core() {
    auto f = raw::RawSignature::free_of(2);
    f.add_constraint(BitVec::from_string("11"), false);
    f.diag[0] = 1;
    return AffineSignature::canonicalize(std::move(f));
}

AffineSignature cnot_core() {
    // Support x1 = x4 = x2 + x3 on (in1, in2, out2, out1) wire order.
    auto f = raw::RawSignature::free_of(4);
    f.add_constraint(BitVec::from_string("1001"), false);
    f.add_constraint(BitVec::from_string("1110"), false);
    return AffineSignature::canonicalize(std::move(f));
}

/// Embeds an m-qubit core signature onto n qubits, identity elsewhere.
/// targets[i] is the global qubit carrying the core's i-th wire.
AffineSignature embed(const AffineSignature& core, const std::vector<std::size_t>& targets,
                      std::size_t n) {
    const std::size_t m = targets.size();
    assert(core.arity() == 2 * m);
    AffineSignature t = tensor(core, AffineSignature::identity_map(n - m));
    std::vector<std::size_t> rest;
    {
        std::vector<bool> used(n, false);
        for (std::size_t q : targets) used[q] = true;
        for (std::size_t q = 0; q < n; ++q)
            if (!used[q]) rest.push_back(q);
    }
    std::vector<std::size_t> sigma(2 * n);
    for (std::size_t i = 0; i < m; ++i) {
        sigma[i] = targets[i];                        // core input wire
        sigma[2 * m - 1 - i] = 2 * n - 1 - targets[i];  // core output wire
    }
    const std::size_t idn = n - m;
    for (std::size_t j = 0; j < idn; ++j) {
        sigma[2 * m + j] = rest[j];
        sigma[2 * m + 2 * idn - 1 - j] = 2 * n - 1 - rest[j];
    }
    return permute(t, sigma);
}

}  // namespace

AffineSignature gate_signature(const Gate& g, std::size_t n) {
    if (g.q0 >= n || (g.is_two_qubit() && (g.q1 >= n || g.q1 == g.q0)))
        throw std::invalid_argument("gate_signature: bad operands");
    switch (g.kind) {
        case GateKind::H: return embed(h_core(), {g.q0}, n);
        case GateKind::P: return embed(p_core(), {g.q0}, n);
        case GateKind::CNOT: return embed(cnot_core(), {g.q0, g.q1}, n);
        default: break;
    }
    std::vector<Gate> prims;
    expand_gate(g, prims);
    AffineSignature acc = gate_signature(prims[0], n);
    for (std::size_t i = 1; i < prims.size(); ++i)
        acc = compose(gate_signature(prims[i], n), acc);
    return acc;
}

// ---------------------------------------------------------------------------
// Whole-circuit signature. Gates touch one or two wires, so instead of a
// full-arity composition per gate we update the working form in place:
//   P_q:       multiply by i^{out_q}, one diagonal bump
//   CNOT_ab:   relabel out_b := out_b + out_a in support and phase
//   H_q:       rename out_q to a scratch variable z, open a fresh out_q with
//              phase 2*out_q*z and 1/sqrt2, then sum z out
// The working form is kept unreduced; support rows are compacted when row
// count grows past the variable count.

namespace {

class PrefixBuilder {
public:
    explicit PrefixBuilder(std::size_t n) : n_(n), f_(raw::RawSignature::free_of(2 * n)) {
        for (std::size_t q = 0; q < n; ++q) {
            BitVec row(2 * n);
            row.set(q, true);
            row.set(2 * n - 1 - q, true);
            f_.add_constraint(std::move(row), false);
        }
    }

    void apply(const Gate& g) {
        switch (g.kind) {
            case GateKind::H: apply_h(g.q0); break;
            case GateKind::P: apply_p(g.q0); break;
            case GateKind::CNOT: apply_cnot(g.q0, g.q1); break;
            default: assert(false && "builder expects expanded gates");
        }
    }

    AffineSignature finish() { return AffineSignature::canonicalize(std::move(f_)); }

private:
    void apply_p(std::size_t q) { f_.diag[q] = static_cast<uint8_t>((f_.diag[q] + 1) & 3); }

    void apply_cnot(std::size_t a, std::size_t b) {
        // out_b now reads out_b + out_a: rows with bit b toggle bit a, the
        // phase terms on b spill onto a.
        const int db = f_.diag[b];
        const bool cab = f_.get_cross(a, b);
        f_.diag[a] = static_cast<uint8_t>((f_.diag[a] + db + 2 * (cab ? 1 : 0)) & 3);
        BitVec cb = f_.cross[b];
        cb.set(a, false);
        cb.set(b, false);
        for (std::size_t v = cb.first_set(); v != BitVec::npos; v = cb.first_set(v + 1))
            f_.cross[v].flip(a);
        f_.cross[a] ^= cb;
        if (db & 1) { f_.cross[a].flip(b); f_.cross[b].flip(a); }
        for (auto& row : f_.rows)
            if (row.get(b)) row.flip(a);
    }

    void apply_h(std::size_t q) {
        const std::size_t s = 2 * n_;  // scratch column
        grow();
        for (auto& row : f_.rows)
            if (row.get(q)) { row.set(q, false); row.set(s, true); }
        f_.diag[s] = f_.diag[q];
        f_.diag[q] = 0;
        BitVec cq = f_.cross[q];
        for (std::size_t v = cq.first_set(); v != BitVec::npos; v = cq.first_set(v + 1)) {
            f_.cross[v].set(q, false);
            f_.cross[v].set(s, true);
        }
        f_.cross[s] = std::move(cq);
        f_.cross[q] = BitVec(2 * n_ + 1);
        f_.set_cross(q, s, true);
        f_.scalar.mul_pow2_half(-1);
        raw::marginalize_inplace(f_, s);  // shrinks back to 2n columns
        if (f_.scalar.is_zero())
            throw InternalInvariantViolation("unitary prefix collapsed to zero");
        if (f_.rows.size() > 2 * n_ + 8) compact();
    }

    void grow() {
        const std::size_t k = 2 * n_ + 1;
        f_.arity = k;
        for (auto& row : f_.rows) row.resize(k);
        f_.diag.push_back(0);
        for (auto& c : f_.cross) c.resize(k);
        f_.cross.emplace_back(k);
    }

    void compact() {
        F2Matrix a(f_.rows.size(), f_.arity);
        BitVec b(f_.rows.size());
        for (std::size_t i = 0; i < f_.rows.size(); ++i) {
            a.row(i) = std::move(f_.rows[i]);
            b.set(i, f_.rhs[i] != 0);
        }
        auto sys = rref_system(std::move(a), std::move(b));
        if (!sys.feasible)
            throw InternalInvariantViolation("unitary prefix support became infeasible");
        f_.rows.clear();
        f_.rhs.clear();
        for (auto [r, c] : sys.pivots) {
            f_.rows.push_back(sys.a.row(r));
            f_.rhs.push_back(sys.b.get(r) ? 1 : 0);
        }
    }

    std::size_t n_;
    raw::RawSignature f_;
};

}  // namespace

AffineSignature circuit_signature(const Circuit& c) {
    std::vector<Gate> prims;
    for (const auto& g : c.gates) {
        if (g.q0 >= c.n_qubits || (g.is_two_qubit() && (g.q1 >= c.n_qubits || g.q1 == g.q0)))
            throw std::invalid_argument("circuit_signature: bad gate operands");
        expand_gate(g, prims);
    }
    PrefixBuilder builder(c.n_qubits);
    for (const auto& g : prims) builder.apply(g);
    return builder.finish();
}

ExactScalar amplitude(const Circuit& c, const BitVec& input, const BitVec& output) {
    if (input.size() != c.n_qubits || output.size() != c.n_qubits)
        throw std::invalid_argument("amplitude: bit string length mismatch");
    AffineSignature f = circuit_signature(c);
    const std::size_t n = c.n_qubits;
    BitVec x(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
        x.set(q, output.get(q));
        x.set(2 * n - 1 - q, input.get(q));
    }
    return evaluate(f, x);
}

namespace {

/// Fixes variable `var` to `bit`: tensor with the point signature, identify,
/// then sum the pinned wire out.
AffineSignature pin(const AffineSignature& f, std::size_t var, bool bit) {
    const std::size_t k = f.arity();
    AffineSignature t = tensor(f, AffineSignature::point(bit));
    t = identify(t, var, k);
    return marginalize(t, k - 1);
}

/// Pins every input variable of an arity-2n circuit signature, leaving the
/// n output variables (qubit q at index q).
AffineSignature pin_inputs(const AffineSignature& f, const BitVec& input) {
    const std::size_t n = input.size();
    AffineSignature g = f;
    for (std::size_t q = 0; q < n; ++q)
        g = pin(g, 2 * n - 1 - q, input.get(q));
    return g;
}

DyadicProb scalar_to_prob(const ExactScalar& s) {
    if (s.is_zero()) return DyadicProb::none();
    if (s.q() != 0 || s.p() > 0 || (s.p() & 1))
        throw InternalInvariantViolation("probability contraction left the dyadic range: " +
                                         s.to_string());
    return DyadicProb::pow2(static_cast<unsigned>(-s.p() / 2));
}

/// Sums out every remaining variable and reads the resulting scalar off as a
/// probability.
DyadicProb contract_to_prob(AffineSignature f) {
    for (std::size_t j = f.arity(); j-- > 0;) f = marginalize(f, j);
    return scalar_to_prob(f.scalar());
}

/// |amplitude|^2 form of the output distribution: the doubled signature with
/// conjugate copy, wires identified pairwise. Arity n, qubit q at index q.
AffineSignature outcome_weights(const Circuit& c, const BitVec& input) {
    AffineSignature g = pin_inputs(circuit_signature(c), input);
    const std::size_t n = c.n_qubits;
    AffineSignature t = tensor(g, conjugate(g));
    for (std::size_t q = n; q-- > 0;) t = identify(t, n + q, q);
    return t;
}

}  // namespace

DyadicProb marginal_probability(const Circuit& c, const BitVec& input,
                                const std::vector<MeasuredBit>& measured) {
    if (input.size() != c.n_qubits)
        throw std::invalid_argument("marginal_probability: input length mismatch");
    std::vector<int> want(c.n_qubits, -1);
    for (const auto& m : measured) {
        if (m.qubit >= c.n_qubits)
            throw std::invalid_argument("marginal_probability: measured qubit out of range");
        if (want[m.qubit] != -1)
            throw std::invalid_argument("marginal_probability: duplicate measured qubit");
        want[m.qubit] = m.bit ? 1 : 0;
    }
    AffineSignature t = outcome_weights(c, input);
    for (std::size_t q = c.n_qubits; q-- > 0;) {
        if (want[q] >= 0) t = pin(t, q, want[q] == 1);
        else t = marginalize(t, q);
    }
    return scalar_to_prob(t.scalar());
}

BitVec sample_outcome(const Circuit& c, const BitVec& input, uint64_t seed) {
    if (input.size() != c.n_qubits)
        throw std::invalid_argument("sample_outcome: input length mismatch");
    const std::size_t n = c.n_qubits;
    std::mt19937_64 rng(seed);
    AffineSignature cur = outcome_weights(c, input);

    BitVec out(n);
    unsigned prev_s = 0;  // probability of the decided prefix is 2^-prev_s
    for (std::size_t q = 0; q < n; ++q) {
        AffineSignature t0 = pin(cur, 0, false);
        DyadicProb joint0 = contract_to_prob(t0);
        bool bit;
        if (joint0.zero) {
            bit = true;  // conditional is 0
        } else if (joint0.s == prev_s) {
            bit = false;  // conditional is 1
        } else {
            if (joint0.s != prev_s + 1)
                throw InternalInvariantViolation("conditional outcome probability not in {0,1/2,1}");
            bit = (rng() >> 32) & 1u;  // conditional is 1/2
        }
        out.set(q, bit);
        if (!bit) {
            cur = std::move(t0);
            prev_s = joint0.s;
        } else {
            cur = pin(cur, 0, true);
            if (!joint0.zero) prev_s += 1;  // both halves carry weight
        }
    }
    return out;
}

}  // namespace affine
