#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>

#include "affine/signature.hpp"

namespace testutil {

inline affine::BitVec bits_of(std::size_t value, std::size_t len) {
    affine::BitVec x(len);
    for (std::size_t j = 0; j < len; ++j) x.set(j, (value >> j) & 1u);
    return x;
}

inline affine::BitVec bv(std::initializer_list<int> bits) {
    affine::BitVec x(bits.size());
    std::size_t j = 0;
    for (int b : bits) x.set(j++, b != 0);
    return x;
}

inline std::complex<double> value_at(const affine::AffineSignature& f,
                                     std::initializer_list<int> bits) {
    return evaluate(f, bv(bits)).to_complex();
}

}  // namespace testutil
