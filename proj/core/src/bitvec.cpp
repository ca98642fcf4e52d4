#include "affine/bitvec.hpp"

#include <bit>
#include <stdexcept>

namespace affine {

BitVec BitVec::from_string(const std::string& bits) {
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') v.set(i, true);
        else if (bits[i] != '0') throw std::invalid_argument("BitVec::from_string: bad character");
    }
    return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (o.len_ != len_) throw std::invalid_argument("BitVec xor: length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
}

bool BitVec::any() const {
    for (uint64_t w : words_) if (w) return true;
    return false;
}

std::size_t BitVec::popcount() const {
    std::size_t n = 0;
    for (uint64_t w : words_) n += std::popcount(w);
    return n;
}

bool BitVec::parity_and(const BitVec& a, const BitVec& b) {
    return popcount_and(a, b) & 1u;
}

std::size_t BitVec::popcount_and(const BitVec& a, const BitVec& b) {
    if (a.len_ != b.len_) throw std::invalid_argument("BitVec and: length mismatch");
    std::size_t n = 0;
    for (std::size_t w = 0; w < a.words_.size(); ++w) n += std::popcount(a.words_[w] & b.words_[w]);
    return n;
}

std::size_t BitVec::first_set(std::size_t from) const {
    if (from >= len_) return npos;
    std::size_t w = from >> 6;
    uint64_t cur = words_[w] & (~uint64_t(0) << (from & 63));
    while (true) {
        if (cur) return (w << 6) + std::countr_zero(cur);
        if (++w == words_.size()) return npos;
        cur = words_[w];
    }
}

void BitVec::erase_bit(std::size_t i) {
    // Shift everything above position i down by one, word at a time.
    std::size_t w = i >> 6;
    std::size_t off = i & 63;
    uint64_t low_mask = (uint64_t(1) << off) - 1;
    uint64_t carry = (w + 1 < words_.size()) ? (words_[w + 1] & 1u) : 0;
    words_[w] = (words_[w] & low_mask) | ((words_[w] >> 1) & ~low_mask) | (carry << 63);
    for (std::size_t j = w + 1; j < words_.size(); ++j) {
        carry = (j + 1 < words_.size()) ? (words_[j + 1] & 1u) : 0;
        words_[j] = (words_[j] >> 1) | (carry << 63);
    }
    resize(len_ - 1);
}

void BitVec::push_back(bool v) {
    resize(len_ + 1);
    set(len_ - 1, v);
}

void BitVec::resize(std::size_t len) {
    len_ = len;
    words_.resize((len + 63) / 64, 0);
    trim();
}

void BitVec::trim() {
    if (len_ & 63) words_.back() &= (uint64_t(1) << (len_ & 63)) - 1;
}

std::string BitVec::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) if (get(i)) s[i] = '1';
    return s;
}

}  // namespace affine
