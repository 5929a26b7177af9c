#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bibd {

// Fixed-length bit sequence, packed into 64-bit words.  Positions are
// 0-based; bits beyond `length` are kept zero so equality and weight
// work word-wise.
class BitVector {
public:
    static constexpr std::size_t max_length = 1023;

    BitVector() = default;
    explicit BitVector(std::size_t length);

    static BitVector from_points(std::size_t length, const std::vector<std::size_t>& points);
    static BitVector from_string(const std::string& bits); // "1101", position 0 first
    static BitVector from_word(std::size_t length, std::uint64_t word);

    std::size_t length() const { return len_; }
    bool test(std::size_t i) const;
    void set(std::size_t i, bool value = true);

    std::size_t weight() const;
    bool none() const;
    bool any() const { return !none(); }

    BitVector operator^(const BitVector& other) const;
    BitVector operator&(const BitVector& other) const;
    BitVector complement() const; // flip all `length` bits

    // -1 when no bit is set.
    int lowest_set_bit() const;

    std::vector<std::size_t> points() const;
    std::uint64_t to_word() const; // requires length <= 64
    std::string to_string() const;

    bool operator==(const BitVector& other) const = default;

    // Block order used throughout: lexicographic on the sorted point
    // lists, i.e. the block containing the lower point comes first.
    bool lex_less(const BitVector& other) const;

    std::size_t hash() const;

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitVectorHash {
    std::size_t operator()(const BitVector& v) const { return v.hash(); }
};

} // namespace bibd
