#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace affine {

/// Element of {0} u { 2^(p/2) * w^q } where w = exp(i*pi/4). This set is
/// closed under every operation the simulator performs, which is what makes
/// the whole evaluation pipeline bit-exact. The canonical zero has p = q = 0.
class ExactScalar {
public:
    ExactScalar() = default;  // one

    static ExactScalar zero() { ExactScalar s; s.zero_ = true; return s; }
    static ExactScalar one() { return ExactScalar(); }
    static ExactScalar make(int p, int q) {
        ExactScalar s;
        s.p_ = p;
        s.q_ = static_cast<uint8_t>(((q % 8) + 8) % 8);
        return s;
    }

    bool is_zero() const { return zero_; }
    bool is_one() const { return !zero_ && p_ == 0 && q_ == 0; }
    int p() const { return p_; }
    int q() const { return q_; }

    ExactScalar operator*(const ExactScalar& o) const {
        if (zero_ || o.zero_) return zero();
        return make(p_ + o.p_, q_ + o.q_);
    }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

    /// Division by a nonzero scalar.
    ExactScalar operator/(const ExactScalar& o) const;

    ExactScalar conj() const { return zero_ ? zero() : make(p_, 8 - q_); }

    /// Multiplies by i^m (i = w^2).
    void mul_i_pow(int m) { if (!zero_) q_ = static_cast<uint8_t>((q_ + 2 * (((m % 4) + 4) % 4)) % 8); }
    /// Multiplies by w^m.
    void mul_omega_pow(int m) { if (!zero_) q_ = static_cast<uint8_t>(((q_ + (m % 8) + 8) % 8)); }
    /// Multiplies by 2^(m/2).
    void mul_pow2_half(int m) { if (!zero_) p_ += m; }
    void set_p(int p) { if (!zero_) p_ = p; }

    bool operator==(const ExactScalar& o) const = default;

    std::complex<double> to_complex() const;

    /// Ring form, e.g. "2^(-1/2) * w^0"; zero prints as "0".
    std::string to_string() const;

private:
    bool zero_ = false;
    int p_ = 0;
    uint8_t q_ = 0;
};

}  // namespace affine
