#pragma once

#include <cstdint>
#include <vector>

#include "bibd/design.hpp"

namespace bibd {

// Square +/-1 matrix with pairwise orthogonal rows.
class HadamardMatrix {
public:
    HadamardMatrix(std::size_t order, std::vector<std::int8_t> entries);

    std::size_t order() const { return order_; }
    int entry(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }

    // H * H^T == order * I, checked exactly.
    bool is_valid() const;
    bool is_normalized() const; // first row and column all +1
    // Negate columns whose first entry is -1, then rows.
    HadamardMatrix normalized() const;

private:
    std::size_t order_;
    std::vector<std::int8_t> entries_;
};

// Points of PG(n-1,2) are the nonzero vectors of F_2^n; vector x maps
// to point index x-1.  One block per nonzero functional a.

// Hyperplanes {x != 0 : <a,x> = 0}: a (2^n-1, 2^{n-1}-1, 2^{n-2}-1) design.
Design pg_hyperplanes(unsigned n); // 2 <= n <= 10

// Hyperplane complements {x != 0 : <a,x> = 1}: the (2^n-1, 2^{n-1}, 2^{n-2})
// family, equal to complement_design(pg_hyperplanes(n)).
Design pg_complement(unsigned n); // 2 <= n <= 10

// Order 2^n, entry (i,j) = (-1)^{<i,j>}.
HadamardMatrix sylvester_hadamard(unsigned n); // 0 <= n <= 10

// Delete the first row and column of the normalized matrix; one block
// per remaining column, holding the rows where the entry is -1.  Gives
// a (4t-1, 2t, t)-SBIBD for order 4t >= 8.
Design hadamard_to_2design(const HadamardMatrix& h);

// Points are the columns; every row past the first contributes its +1
// set and its -1 set as blocks: the 3-(4t, 2t, t-1) design.
Design hadamard_to_3design(const HadamardMatrix& h);

// The (16,6,2) biplane from the quadratic form Q(x) = x0 x1 + x2 x3:
// for each functional a, the level set of Q + <a,.> of size 6.
Design sdp_biplane();

} // namespace bibd
