#include "bibd/bitvector.hpp"

#include <bit>
#include <stdexcept>

namespace bibd {

namespace {
std::size_t word_count(std::size_t length) { return (length + 63) / 64; }
}

BitVector::BitVector(std::size_t length) : len_(length), words_(word_count(length), 0) {
    if (length > max_length)
        throw std::invalid_argument("BitVector length exceeds cap of 1023");
}

BitVector BitVector::from_points(std::size_t length, const std::vector<std::size_t>& points) {
    BitVector v(length);
    for (std::size_t p : points)
        v.set(p);
    return v;
}

BitVector BitVector::from_string(const std::string& bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(i);
        else if (bits[i] != '0')
            throw std::invalid_argument("bit string must contain only 0 and 1");
    }
    return v;
}

BitVector BitVector::from_word(std::size_t length, std::uint64_t word) {
    if (length > 64)
        throw std::invalid_argument("from_word requires length <= 64");
    BitVector v(length);
    if (length > 0) {
        std::uint64_t mask = length == 64 ? ~0ull : ((1ull << length) - 1);
        v.words_[0] = word & mask;
        if ((word & ~mask) != 0)
            throw std::invalid_argument("word has bits beyond length");
    } else if (word != 0) {
        throw std::invalid_argument("word has bits beyond length");
    }
    return v;
}

bool BitVector::test(std::size_t i) const {
    if (i >= len_)
        return false;
    return (words_[i / 64] >> (i % 64)) & 1;
}

void BitVector::set(std::size_t i, bool value) {
    if (i >= len_)
        throw std::out_of_range("BitVector::set position out of range");
    std::uint64_t bit = 1ull << (i % 64);
    if (value)
        words_[i / 64] |= bit;
    else
        words_[i / 64] &= ~bit;
}

std::size_t BitVector::weight() const {
    std::size_t w = 0;
    for (std::uint64_t word : words_)
        w += static_cast<std::size_t>(std::popcount(word));
    return w;
}

bool BitVector::none() const {
    for (std::uint64_t word : words_)
        if (word != 0)
            return false;
    return true;
}

BitVector BitVector::operator^(const BitVector& other) const {
    if (len_ != other.len_)
        throw std::invalid_argument("xor: length mismatch");
    BitVector out(len_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        out.words_[i] = words_[i] ^ other.words_[i];
    return out;
}

BitVector BitVector::operator&(const BitVector& other) const {
    if (len_ != other.len_)
        throw std::invalid_argument("and: length mismatch");
    BitVector out(len_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        out.words_[i] = words_[i] & other.words_[i];
    return out;
}

BitVector BitVector::complement() const {
    BitVector out(len_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        out.words_[i] = ~words_[i];
    if (len_ % 64 != 0 && !words_.empty())
        out.words_.back() &= (1ull << (len_ % 64)) - 1;
    return out;
}

int BitVector::lowest_set_bit() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] != 0)
            return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
    return -1;
}

std::vector<std::size_t> BitVector::points() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        while (w != 0) {
            out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

std::uint64_t BitVector::to_word() const {
    if (len_ > 64)
        throw std::logic_error("to_word requires length <= 64");
    return words_.empty() ? 0 : words_[0];
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (test(i))
            s[i] = '1';
    return s;
}

bool BitVector::lex_less(const BitVector& other) const {
    // First differing position decides; the vector holding a 1 there
    // contains the lower point and sorts first.
    std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t diff = words_[i] ^ other.words_[i];
        if (diff != 0) {
            std::uint64_t bit = diff & (~diff + 1);
            return (words_[i] & bit) != 0;
        }
    }
    if (words_.size() != other.words_.size()) {
        const auto& longer = words_.size() > n ? words_ : other.words_;
        for (std::size_t i = n; i < longer.size(); ++i)
            if (longer[i] != 0)
                return &longer == &words_;
    }
    return false;
}

std::size_t BitVector::hash() const {
    std::size_t h = len_ * 0x9e3779b97f4a7c15ull;
    for (std::uint64_t w : words_)
        h = h * 0x100000001b3ull ^ w;
    return h;
}

} // namespace bibd
