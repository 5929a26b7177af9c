#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bibd/bitvector.hpp"

namespace bibd {

// Dense matrix over GF(2), stored as packed rows of equal length.
class GF2Matrix {
public:
    explicit GF2Matrix(std::size_t col_count) : cols_(col_count) {
        if (col_count > BitVector::max_length)
            throw_col_cap();
    }
    explicit GF2Matrix(std::vector<BitVector> rows);

    std::size_t row_count() const { return rows_.size(); }
    std::size_t col_count() const { return cols_; }
    const BitVector& row(std::size_t i) const { return rows_.at(i); }
    const std::vector<BitVector>& rows() const { return rows_; }

    void append_row(BitVector row);
    GF2Matrix transpose() const;

    bool operator==(const GF2Matrix& other) const = default;

private:
    [[noreturn]] static void throw_col_cap();

    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

// Reduced row echelon form: zero rows dropped, pivot columns strictly
// increasing, each pivot column has exactly one set bit.  Unique per
// row space.
GF2Matrix rref(const GF2Matrix& m);

std::size_t gf2_rank(const GF2Matrix& m);

// 2^rank; throws when the rank would overflow 64 bits.
std::uint64_t span_size(const GF2Matrix& basis);

} // namespace bibd
