#include "affine/verify.hpp"

#include <algorithm>
#include <cmath>

#include "affine/oracle.hpp"

namespace affine::oracle {

namespace {

BitVec bits_of(std::size_t value, std::size_t len) {
    BitVec x(len);
    for (std::size_t j = 0; j < len; ++j) x.set(j, (value >> j) & 1u);
    return x;
}

BitVec insert_bit(const BitVec& x, std::size_t pos, bool bit) {
    BitVec y(x.size() + 1);
    for (std::size_t j = 0; j < pos; ++j) y.set(j, x.get(j));
    y.set(pos, bit);
    for (std::size_t j = pos; j < x.size(); ++j) y.set(j + 1, x.get(j));
    return y;
}

}  // namespace

double tensor_pointwise_dev(const AffineSignature& f, const AffineSignature& g) {
    const AffineSignature t = tensor(f, g);
    double dev = 0.0;
    for (std::size_t vx = 0; vx < (std::size_t(1) << f.arity()); ++vx) {
        const BitVec x = bits_of(vx, f.arity());
        const auto fx = evaluate(f, x).to_complex();
        for (std::size_t vy = 0; vy < (std::size_t(1) << g.arity()); ++vy) {
            const BitVec y = bits_of(vy, g.arity());
            BitVec xy = x;
            for (std::size_t j = 0; j < g.arity(); ++j) { xy.push_back(y.get(j)); }
            dev = std::max(dev, std::abs(evaluate(t, xy).to_complex() -
                                         fx * evaluate(g, y).to_complex()));
        }
    }
    return dev;
}

double permute_pointwise_dev(const AffineSignature& f, const std::vector<std::size_t>& sigma) {
    const AffineSignature p = permute(f, sigma);
    const std::size_t k = f.arity();
    double dev = 0.0;
    for (std::size_t v = 0; v < (std::size_t(1) << k); ++v) {
        const BitVec x = bits_of(v, k);
        BitVec xs(k);
        for (std::size_t m = 0; m < k; ++m) xs.set(m, x.get(sigma[m]));
        dev = std::max(dev, std::abs(evaluate(p, x).to_complex() - evaluate(f, xs).to_complex()));
    }
    return dev;
}

double identify_pointwise_dev(const AffineSignature& f, std::size_t j, std::size_t l) {
    const AffineSignature h = identify(f, j, l);
    const std::size_t k = f.arity();
    double dev = 0.0;
    for (std::size_t v = 0; v < (std::size_t(1) << (k - 1)); ++v) {
        const BitVec x = bits_of(v, k - 1);
        const std::size_t l_after = l < j ? l : l - 1;
        const BitVec full = insert_bit(x, j, x.get(l_after));
        dev = std::max(dev, std::abs(evaluate(h, x).to_complex() - evaluate(f, full).to_complex()));
    }
    return dev;
}

double marginalize_pointwise_dev(const AffineSignature& f, std::size_t j) {
    const AffineSignature h = marginalize(f, j);
    const std::size_t k = f.arity();
    double dev = 0.0;
    for (std::size_t v = 0; v < (std::size_t(1) << (k - 1)); ++v) {
        const BitVec x = bits_of(v, k - 1);
        const auto sum = evaluate(f, insert_bit(x, j, false)).to_complex() +
                         evaluate(f, insert_bit(x, j, true)).to_complex();
        dev = std::max(dev, std::abs(evaluate(h, x).to_complex() - sum));
    }
    return dev;
}

double compose_matrix_dev(const AffineSignature& f, const AffineSignature& g) {
    return DenseMatrix::max_abs_diff(signature_matrix(compose(f, g)),
                                     signature_matrix(f) * signature_matrix(g));
}

double signature_vs_dense_dev(const AffineSignature& f, const DenseMatrix& ref) {
    return DenseMatrix::max_abs_diff(signature_matrix(f), ref);
}

double circuit_vs_dense_dev(const Circuit& c) {
    return signature_vs_dense_dev(circuit_signature(c), dense_circuit(c));
}

}  // namespace affine::oracle
