#include "bibd/gf2_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace bibd {

GF2Matrix::GF2Matrix(std::vector<BitVector> rows) : rows_(std::move(rows)) {
    cols_ = rows_.empty() ? 0 : rows_[0].length();
    if (cols_ > BitVector::max_length)
        throw_col_cap();
    for (const auto& r : rows_)
        if (r.length() != cols_)
            throw std::invalid_argument("GF2Matrix: rows of unequal length");
}

void GF2Matrix::append_row(BitVector row) {
    if (row.length() != cols_)
        throw std::invalid_argument("GF2Matrix: row length mismatch");
    rows_.push_back(std::move(row));
}

GF2Matrix GF2Matrix::transpose() const {
    std::vector<BitVector> out(cols_, BitVector(rows_.size()));
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (std::size_t j : rows_[i].points())
            out[j].set(i);
    return GF2Matrix(std::move(out));
}

void GF2Matrix::throw_col_cap() {
    throw std::invalid_argument("GF2Matrix: column count exceeds cap of 1023");
}

GF2Matrix rref(const GF2Matrix& m) {
    // Incremental elimination keyed by lowest set bit.
    std::vector<std::pair<int, BitVector>> pivots; // (pivot column, row)
    for (std::size_t i = 0; i < m.row_count(); ++i) {
        BitVector r = m.row(i);
        for (const auto& [p, basis_row] : pivots)
            if (r.test(static_cast<std::size_t>(p)))
                r = r ^ basis_row;
        int p = r.lowest_set_bit();
        if (p < 0)
            continue;
        for (auto& [q, basis_row] : pivots)
            if (basis_row.test(static_cast<std::size_t>(p)))
                basis_row = basis_row ^ r;
        pivots.emplace_back(p, std::move(r));
    }
    std::sort(pivots.begin(), pivots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    GF2Matrix out(m.col_count());
    for (auto& [p, row] : pivots)
        out.append_row(std::move(row));
    return out;
}

std::size_t gf2_rank(const GF2Matrix& m) {
    std::vector<BitVector> basis;
    for (std::size_t i = 0; i < m.row_count(); ++i) {
        BitVector r = m.row(i);
        for (const auto& b : basis) {
            int p = b.lowest_set_bit();
            if (p >= 0 && r.test(static_cast<std::size_t>(p)))
                r = r ^ b;
        }
        if (r.any())
            basis.push_back(std::move(r));
    }
    return basis.size();
}

std::uint64_t span_size(const GF2Matrix& basis) {
    std::size_t r = gf2_rank(basis);
    if (r >= 64)
        throw std::overflow_error("span_size: rank too large for a 64-bit count");
    return 1ull << r;
}

} // namespace bibd
