#include "affine/exact_scalar.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace affine {

ExactScalar ExactScalar::operator/(const ExactScalar& o) const {
    if (o.zero_) throw std::domain_error("ExactScalar: division by zero");
    if (zero_) return zero();
    return make(p_ - o.p_, q_ - o.q_);
}

std::complex<double> ExactScalar::to_complex() const {
    if (zero_) return {0.0, 0.0};
    double mag = std::exp2(0.5 * p_);
    double ang = std::numbers::pi * q_ / 4.0;
    return {mag * std::cos(ang), mag * std::sin(ang)};
}

std::string ExactScalar::to_string() const {
    if (zero_) return "0";
    return "2^(" + std::to_string(p_) + "/2) * w^" + std::to_string(static_cast<int>(q_));
}

}  // namespace affine
