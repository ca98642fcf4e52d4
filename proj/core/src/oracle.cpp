#include "affine/oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "affine/errors.hpp"

namespace affine {

DenseMatrix DenseMatrix::operator*(const DenseMatrix& o) const {
    if (dim != o.dim) throw std::invalid_argument("DenseMatrix multiply: size mismatch");
    DenseMatrix r(n_qubits);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) {
            const auto v = at(i, k);
            if (v == std::complex<double>(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < dim; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix r(n_qubits);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

double DenseMatrix::max_abs_diff(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    double m = 0.0;
    for (std::size_t i = 0; i < lhs.a.size(); ++i)
        m = std::max(m, std::abs(lhs.a[i] - rhs.a[i]));
    return m;
}

double DenseMatrix::max_abs_diff_from_identity() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            m = std::max(m, std::abs(at(i, j) - (i == j ? 1.0 : 0.0)));
    return m;
}

namespace oracle {

namespace {

constexpr std::complex<double> kZero{0.0, 0.0};
constexpr std::complex<double> kOne{1.0, 0.0};
constexpr std::complex<double> kI{0.0, 1.0};

void check_limit(std::size_t n, std::size_t max_n, const char* what) {
    if (n > max_n)
        throw DenseLimitExceeded(std::string(what) + ": " + std::to_string(n) +
                                 " qubits exceeds dense limit " + std::to_string(max_n));
}

std::size_t bit_of(std::size_t index, std::size_t q, std::size_t n) {
    return (index >> (n - 1 - q)) & 1u;  // qubit 0 is the most significant bit
}

DenseMatrix embed_1q(const std::complex<double> u[2][2], std::size_t q, std::size_t n) {
    DenseMatrix m(n);
    const std::size_t others = ~(std::size_t(1) << (n - 1 - q));
    for (std::size_t r = 0; r < m.dim; ++r)
        for (std::size_t c = 0; c < m.dim; ++c)
            if ((r & others) == (c & others))
                m.at(r, c) = u[bit_of(r, q, n)][bit_of(c, q, n)];
    return m;
}

}  // namespace

DenseMatrix dense_gate(const Gate& g, std::size_t n, std::size_t max_n) {
    check_limit(n, max_n, "dense_gate");
    if (g.q0 >= n || (g.is_two_qubit() && (g.q1 >= n || g.q1 == g.q0)))
        throw std::invalid_argument("dense_gate: bad operands");
    const double s = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
        case GateKind::H: {
            const std::complex<double> u[2][2] = {{s, s}, {s, -s}};
            return embed_1q(u, g.q0, n);
        }
        case GateKind::P: {
            const std::complex<double> u[2][2] = {{kOne, kZero}, {kZero, kI}};
            return embed_1q(u, g.q0, n);
        }
        case GateKind::CNOT: {
            DenseMatrix m(n);
            for (std::size_t c = 0; c < m.dim; ++c) {
                std::size_t r = c;
                if (bit_of(c, g.q0, n)) r ^= std::size_t(1) << (n - 1 - g.q1);
                m.at(r, c) = kOne;
            }
            return m;
        }
        default:
            // Macros expand exactly like the signature path, phase included.
            return dense_circuit({n, {g}}, max_n);
    }
}

DenseMatrix dense_circuit(const Circuit& c, std::size_t max_n) {
    check_limit(c.n_qubits, max_n, "dense_circuit");
    DenseMatrix acc = DenseMatrix::identity(c.n_qubits);
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case GateKind::H:
            case GateKind::P:
            case GateKind::CNOT:
                acc = dense_gate(g, c.n_qubits, max_n) * acc;
                break;
            case GateKind::Z:
                acc = dense_circuit({c.n_qubits, {Gate::one_qubit(GateKind::P, g.q0),
                                                  Gate::one_qubit(GateKind::P, g.q0)}},
                                    max_n) *
                      acc;
                break;
            case GateKind::X:
                acc = dense_circuit({c.n_qubits, {Gate::one_qubit(GateKind::H, g.q0),
                                                  Gate::one_qubit(GateKind::Z, g.q0),
                                                  Gate::one_qubit(GateKind::H, g.q0)}},
                                    max_n) *
                      acc;
                break;
            case GateKind::Y:
                acc = dense_circuit({c.n_qubits, {Gate::one_qubit(GateKind::X, g.q0),
                                                  Gate::one_qubit(GateKind::Z, g.q0)}},
                                    max_n) *
                      acc;
                break;
            case GateKind::CZ:
                acc = dense_circuit({c.n_qubits, {Gate::one_qubit(GateKind::H, g.q1),
                                                  Gate::two_qubit(GateKind::CNOT, g.q0, g.q1),
                                                  Gate::one_qubit(GateKind::H, g.q1)}},
                                    max_n) *
                      acc;
                break;
        }
    }
    return acc;
}

std::vector<std::complex<double>> dense_state(const Circuit& c, const BitVec& input,
                                              std::size_t max_n) {
    if (input.size() != c.n_qubits) throw std::invalid_argument("dense_state: input length mismatch");
    DenseMatrix m = dense_circuit(c, max_n);
    std::size_t col = 0;
    for (std::size_t q = 0; q < c.n_qubits; ++q)
        if (input.get(q)) col |= std::size_t(1) << (c.n_qubits - 1 - q);
    std::vector<std::complex<double>> state(m.dim);
    for (std::size_t r = 0; r < m.dim; ++r) state[r] = m.at(r, col);
    return state;
}

bool dense_is_unitary(const DenseMatrix& m, double tol) {
    return (m * m.adjoint()).max_abs_diff_from_identity() <= tol;
}

std::optional<PauliOperator> dense_in_pauli_group(const DenseMatrix& m, double tol) {
    const std::size_t n = m.n_qubits;
    PauliOperator p = PauliOperator::identity(n);

    // Row 0 pins e and i^c; rows at unit indices pin the sign vector r.
    std::size_t e_col = m.dim;
    for (std::size_t cidx = 0; cidx < m.dim; ++cidx)
        if (std::abs(m.at(0, cidx)) > tol) {
            if (e_col != m.dim) return std::nullopt;  // more than one hit
            e_col = cidx;
        }
    if (e_col == m.dim) return std::nullopt;
    for (std::size_t q = 0; q < n; ++q) p.e.set(q, bit_of(e_col, q, n));

    const std::complex<double> head = m.at(0, e_col);
    int c = -1;
    for (int k = 0; k < 4; ++k) {
        std::complex<double> ik = std::pow(kI, k);
        if (std::abs(head - ik) <= tol) { c = k; break; }
    }
    if (c < 0) return std::nullopt;
    p.c = static_cast<uint8_t>(c);

    for (std::size_t q = 0; q < n; ++q) {
        const std::size_t x = std::size_t(1) << (n - 1 - q);
        const std::complex<double> v = m.at(x, x ^ e_col);
        if (std::abs(v - head) <= tol) p.r.set(q, false);
        else if (std::abs(v + head) <= tol) p.r.set(q, true);
        else return std::nullopt;
    }

    // Verify the full entry pattern.
    DenseMatrix ref = dense_from_pauli(p, n);
    return DenseMatrix::max_abs_diff(m, ref) <= tol ? std::optional<PauliOperator>(p)
                                                    : std::nullopt;
}

bool dense_is_clifford(const DenseMatrix& m, double tol) {
    if (!dense_is_unitary(m, tol)) return false;
    const std::size_t n = m.n_qubits;
    const DenseMatrix mdag = m.adjoint();
    for (std::size_t q = 0; q < n; ++q) {
        for (PauliKind k : {PauliKind::X, PauliKind::Z}) {
            DenseMatrix sigma = dense_from_pauli(pauli_single(k, q, n), n);
            if (!dense_in_pauli_group(m * sigma * mdag, tol)) return false;
        }
    }
    return true;
}

DenseMatrix dense_from_pauli(const PauliOperator& p, std::size_t max_n) {
    check_limit(p.n, max_n, "dense_from_pauli");
    DenseMatrix m(p.n);
    std::size_t e_mask = 0;
    for (std::size_t q = 0; q < p.n; ++q)
        if (p.e.get(q)) e_mask |= std::size_t(1) << (p.n - 1 - q);
    const std::complex<double> ic = std::pow(kI, static_cast<int>(p.c));
    for (std::size_t x = 0; x < m.dim; ++x) {
        int rx = 0;
        for (std::size_t q = 0; q < p.n; ++q)
            if (p.r.get(q) && bit_of(x, q, p.n)) rx ^= 1;
        m.at(x, x ^ e_mask) = ic * (rx ? -1.0 : 1.0);
    }
    return m;
}

std::size_t dense_rank(DenseMatrix m, double tol) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.dim && rank < m.dim; ++col) {
        std::size_t best = m.dim;
        double best_mag = tol;
        for (std::size_t r = rank; r < m.dim; ++r) {
            double mag = std::abs(m.at(r, col));
            if (mag > best_mag) { best_mag = mag; best = r; }
        }
        if (best == m.dim) continue;
        for (std::size_t j = 0; j < m.dim; ++j) std::swap(m.at(rank, j), m.at(best, j));
        const std::complex<double> inv = 1.0 / m.at(rank, col);
        for (std::size_t r = 0; r < m.dim; ++r) {
            if (r == rank) continue;
            const std::complex<double> factor = m.at(r, col) * inv;
            if (factor == kZero) continue;
            for (std::size_t j = col; j < m.dim; ++j) m.at(r, j) -= factor * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

Circuit random_clifford_circuit(std::size_t n, std::size_t length, uint64_t seed) {
    if (n == 0) throw std::invalid_argument("random_clifford_circuit: need at least one qubit");
    std::mt19937_64 rng(seed);
    Circuit c;
    c.n_qubits = n;
    std::uniform_int_distribution<int> kind(0, n >= 2 ? 2 : 1);
    std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
    for (std::size_t i = 0; i < length; ++i) {
        switch (kind(rng)) {
            case 0: c.gates.push_back(Gate::one_qubit(GateKind::H, qubit(rng))); break;
            case 1: c.gates.push_back(Gate::one_qubit(GateKind::P, qubit(rng))); break;
            default: {
                std::size_t a = qubit(rng), b = qubit(rng);
                while (b == a) b = qubit(rng);
                c.gates.push_back(Gate::two_qubit(GateKind::CNOT, a, b));
            }
        }
    }
    return c;
}

AffineSignature random_affine_signature(std::size_t arity, uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto coin = [&](double p) { return std::uniform_real_distribution<>(0.0, 1.0)(rng) < p; };

    if (coin(0.05)) return AffineSignature::zero(arity);

    auto f = raw::RawSignature::free_of(arity);
    // Build the support around a random particular solution so it is feasible.
    BitVec sol(arity);
    for (std::size_t j = 0; j < arity; ++j) sol.set(j, rng() & 1u);
    const std::size_t n_rows =
        arity == 0 ? 0 : std::uniform_int_distribution<std::size_t>(0, arity)(rng);
    for (std::size_t i = 0; i < n_rows; ++i) {
        BitVec row(arity);
        for (std::size_t j = 0; j < arity; ++j) row.set(j, rng() & 1u);
        f.add_constraint(row, BitVec::parity_and(row, sol));
    }
    for (std::size_t j = 0; j < arity; ++j) f.diag[j] = static_cast<uint8_t>(rng() & 3u);
    for (std::size_t j = 0; j < arity; ++j)
        for (std::size_t l = j + 1; l < arity; ++l)
            if (rng() & 1u) f.set_cross(j, l, true);
    const int p = std::uniform_int_distribution<int>(-8, 8)(rng);
    f.scalar = ExactScalar::make(p, static_cast<int>(rng() & 7u));
    return AffineSignature::canonicalize(std::move(f));
}

}  // namespace oracle
}  // namespace affine
