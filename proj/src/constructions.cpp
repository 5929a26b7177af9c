#include "bibd/constructions.hpp"

#include <bit>
#include <stdexcept>

namespace bibd {

namespace {

unsigned parity(std::uint64_t x) { return std::popcount(x) & 1u; }

void check_pg_range(unsigned n) {
    if (n < 2 || n > 10)
        throw std::invalid_argument("pg construction requires 2 <= n <= 10");
}

Design pg_design(unsigned n, unsigned wanted_parity) {
    check_pg_range(n);
    std::uint64_t count = (1ull << n) - 1;
    std::vector<BitVector> blocks;
    blocks.reserve(count);
    for (std::uint64_t a = 1; a <= count; ++a) {
        BitVector block(count);
        for (std::uint64_t x = 1; x <= count; ++x)
            if (parity(a & x) == wanted_parity)
                block.set(x - 1);
        blocks.push_back(std::move(block));
    }
    return Design(count, std::move(blocks));
}

} // namespace

HadamardMatrix::HadamardMatrix(std::size_t order, std::vector<std::int8_t> entries)
    : order_(order), entries_(std::move(entries)) {
    if (order == 0 || entries_.size() != order * order)
        throw std::invalid_argument("HadamardMatrix: entry count must be order^2");
    for (std::int8_t e : entries_)
        if (e != 1 && e != -1)
            throw std::invalid_argument("HadamardMatrix: entries must be +1 or -1");
    if (order > 2 && order % 4 != 0)
        throw std::invalid_argument("HadamardMatrix: order must be 1, 2, or divisible by 4");
}

bool HadamardMatrix::is_valid() const {
    // Rows as bitmasks of -1 positions: orthogonality of two distinct
    // rows is exactly |r_i xor r_j| = order/2.
    std::vector<std::vector<std::uint64_t>> rows(order_);
    std::size_t words = (order_ + 63) / 64;
    for (std::size_t i = 0; i < order_; ++i) {
        rows[i].assign(words, 0);
        for (std::size_t j = 0; j < order_; ++j)
            if (entry(i, j) == -1)
                rows[i][j / 64] |= 1ull << (j % 64);
    }
    for (std::size_t i = 0; i < order_; ++i) {
        for (std::size_t j = i + 1; j < order_; ++j) {
            std::size_t diff = 0;
            for (std::size_t w = 0; w < words; ++w)
                diff += static_cast<std::size_t>(std::popcount(rows[i][w] ^ rows[j][w]));
            if (diff * 2 != order_)
                return false;
        }
    }
    return true;
}

bool HadamardMatrix::is_normalized() const {
    for (std::size_t j = 0; j < order_; ++j)
        if (entry(0, j) != 1)
            return false;
    for (std::size_t i = 0; i < order_; ++i)
        if (entry(i, 0) != 1)
            return false;
    return true;
}

HadamardMatrix HadamardMatrix::normalized() const {
    std::vector<std::int8_t> e = entries_;
    // Columns first, then rows.
    for (std::size_t j = 0; j < order_; ++j)
        if (e[j] == -1)
            for (std::size_t i = 0; i < order_; ++i)
                e[i * order_ + j] = static_cast<std::int8_t>(-e[i * order_ + j]);
    for (std::size_t i = 0; i < order_; ++i)
        if (e[i * order_] == -1)
            for (std::size_t j = 0; j < order_; ++j)
                e[i * order_ + j] = static_cast<std::int8_t>(-e[i * order_ + j]);
    return HadamardMatrix(order_, std::move(e));
}

Design pg_hyperplanes(unsigned n) { return pg_design(n, 0); }

Design pg_complement(unsigned n) { return pg_design(n, 1); }

HadamardMatrix sylvester_hadamard(unsigned n) {
    if (n > 10)
        throw std::invalid_argument("sylvester_hadamard requires 0 <= n <= 10");
    std::size_t order = 1ull << n;
    std::vector<std::int8_t> e(order * order);
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = 0; j < order; ++j)
            e[i * order + j] = parity(i & j) ? -1 : 1;
    return HadamardMatrix(order, std::move(e));
}

namespace {

HadamardMatrix checked_normalized(const HadamardMatrix& h) {
    if (h.order() < 8 || h.order() % 4 != 0)
        throw std::invalid_argument("design extraction requires order >= 8, divisible by 4");
    if (!h.is_valid())
        throw std::invalid_argument("not a Hadamard matrix: rows are not orthogonal");
    return h.is_normalized() ? h : h.normalized();
}

} // namespace

Design hadamard_to_2design(const HadamardMatrix& h) {
    HadamardMatrix m = checked_normalized(h);
    std::size_t order = m.order();
    std::vector<BitVector> blocks;
    blocks.reserve(order - 1);
    for (std::size_t j = 1; j < order; ++j) {
        BitVector block(order - 1);
        for (std::size_t i = 1; i < order; ++i)
            if (m.entry(i, j) == -1)
                block.set(i - 1);
        blocks.push_back(std::move(block));
    }
    return Design(order - 1, std::move(blocks));
}

Design hadamard_to_3design(const HadamardMatrix& h) {
    HadamardMatrix m = checked_normalized(h);
    std::size_t order = m.order();
    std::vector<BitVector> blocks;
    blocks.reserve(2 * (order - 1));
    for (std::size_t i = 1; i < order; ++i) {
        BitVector plus(order), minus(order);
        for (std::size_t j = 0; j < order; ++j)
            (m.entry(i, j) == 1 ? plus : minus).set(j);
        blocks.push_back(std::move(plus));
        blocks.push_back(std::move(minus));
    }
    return Design(order, std::move(blocks));
}

Design sdp_biplane() {
    auto quad = [](std::uint64_t x) -> unsigned {
        return static_cast<unsigned>(((x & (x >> 1)) ^ ((x >> 2) & (x >> 3))) & 1);
    };
    std::vector<BitVector> blocks;
    blocks.reserve(16);
    for (std::uint64_t a = 0; a < 16; ++a) {
        // Q + <a,.> is bent-like here: its level sets have sizes 6 and 10.
        for (unsigned c : {0u, 1u}) {
            std::vector<std::size_t> pts;
            for (std::uint64_t x = 0; x < 16; ++x)
                if ((quad(x) ^ parity(a & x)) == c)
                    pts.push_back(static_cast<std::size_t>(x));
            if (pts.size() == 6) {
                blocks.push_back(BitVector::from_points(16, pts));
                break;
            }
        }
    }
    Design d(16, std::move(blocks));
    if (d.block_count() != 16)
        throw std::logic_error("sdp_biplane: expected 16 distinct blocks of size 6");
    return d;
}

} // namespace bibd
