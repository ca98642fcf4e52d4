#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affine/bitvec.hpp"
#include "affine/signature.hpp"

namespace affine {

enum class GateKind : uint8_t { H, P, CNOT, X, Y, Z, CZ };

struct Gate {
    GateKind kind;
    std::size_t q0 = 0;
    std::size_t q1 = 0;      // second operand for CNOT/CZ
    std::size_t line = 0;    // source line, 0 when synthetic

    static Gate one_qubit(GateKind k, std::size_t q, std::size_t line = 0) {
        return {k, q, 0, line};
    }
    static Gate two_qubit(GateKind k, std::size_t a, std::size_t b, std::size_t line = 0) {
        return {k, a, b, line};
    }

    bool is_two_qubit() const { return kind == GateKind::CNOT || kind == GateKind::CZ; }
};

struct Circuit {
    std::size_t n_qubits = 0;
    std::vector<Gate> gates;
};

/// Line-oriented grammar: "qubits <n>" first, then one gate per line
/// ("h <q>", "p <q>", "cnot <c> <t>", "x|y|z <q>", "cz <a> <b>"); '#' starts
/// a comment, blank lines are skipped, qubits are 0-based. Throws ParseError
/// with line/column on malformed input, out-of-range or duplicate operands.
Circuit parse_circuit(const std::string& text);
std::string print_circuit(const Circuit& c);

/// The arity-2n signature of a single gate embedded on n qubits (identity on
/// the unaffected wires). Macros expand over the generator set first:
/// z = p p, x = h z h, cz = h_t cnot h_t, and y = z x which equals the Y
/// matrix up to the global phase -i.
AffineSignature gate_signature(const Gate& g, std::size_t n);

/// Signature of the whole circuit, with matrix equal to the operator product
/// of the gate matrices taken right-to-left (the gate list is time order).
/// Built incrementally with wire-local updates, so it stays polynomial in
/// qubits and gates.
AffineSignature circuit_signature(const Circuit& c);

/// Exact amplitude <output| U |input>.
ExactScalar amplitude(const Circuit& c, const BitVec& input, const BitVec& output);

/// Exact dyadic probability: zero or 2^-s.
struct DyadicProb {
    bool zero = true;
    unsigned s = 0;

    static DyadicProb none() { return {true, 0}; }
    static DyadicProb pow2(unsigned s) { return {false, s}; }
    double value() const { return zero ? 0.0 : std::exp2(-static_cast<double>(s)); }
    bool operator==(const DyadicProb& o) const = default;
};

struct MeasuredBit {
    std::size_t qubit;
    bool bit;
};

/// Probability of seeing the given bits on the measured qubits when running
/// the circuit on the given basis state. Contracts the doubled signature
/// (amplitude times conjugate amplitude) with point signatures on the inputs,
/// projectors on the measured outputs, and marginalization on the rest; the
/// result must land in {0} u {2^-s} or InternalInvariantViolation is thrown.
DyadicProb marginal_probability(const Circuit& c, const BitVec& input,
                                const std::vector<MeasuredBit>& measured);

/// Samples a full measurement outcome by chaining single-qubit conditionals;
/// deterministic for a fixed seed, and every returned outcome has nonzero
/// probability.
BitVec sample_outcome(const Circuit& c, const BitVec& input, uint64_t seed);

}  // namespace affine
