#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace affine {

/// Fixed-length bit vector over F2, packed into 64-bit words.
/// Bits past len() are kept zero so whole-word xor/and/popcount are valid.
class BitVec {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    BitVec() = default;
    explicit BitVec(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}

    /// Parses a string of '0'/'1' characters; index 0 is the leftmost char.
    static BitVec from_string(const std::string& bits);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o);
    BitVec operator^(const BitVec& o) const { BitVec r = *this; r ^= o; return r; }

    bool any() const;
    bool none() const { return !any(); }
    std::size_t popcount() const;

    /// Parity of <a, b> over F2, i.e. popcount(a & b) mod 2.
    static bool parity_and(const BitVec& a, const BitVec& b);
    static std::size_t popcount_and(const BitVec& a, const BitVec& b);

    /// Index of the first set bit at position >= from, or npos.
    std::size_t first_set(std::size_t from = 0) const;

    /// Removes bit at position i, shifting higher bits down (length shrinks by one).
    void erase_bit(std::size_t i);
    /// Appends one bit at the end.
    void push_back(bool v);

    /// Zero-extends or truncates to the given length.
    void resize(std::size_t len);

    bool operator==(const BitVec& o) const = default;

    std::string to_string() const;

    const std::vector<uint64_t>& words() const { return words_; }

private:
    void trim();  // clears bits past len_

    std::size_t len_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace affine
