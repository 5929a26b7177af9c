#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bibd/design.hpp"

namespace bibd {

struct EnumerationResult {
    std::uint64_t v = 0;
    unsigned n = 0;
    std::uint64_t labeled_count = 0;
    std::vector<Design> class_representatives;
    std::vector<std::uint64_t> class_sizes;
    bool all_bibd = true;
};

struct EnumerateOptions {
    bool allow_long = false; // required for v = 31 (n = 5)
    // Called periodically during long runs: (subspaces emitted so far).
    std::function<void(std::uint64_t)> heartbeat;
};

// Every delta-closed block set on v points is an n-dimensional subspace
// of F_2^v (minus the zero vector) whose nonzero vectors all have
// weight (v+1)/2; this enumerates them exhaustively and classifies the
// results up to isomorphism.  Requires v = 2^n - 1 with 2 <= n <= 4,
// or n = 5 behind allow_long.
EnumerationResult enumerate_delta_closed(std::uint64_t v, const EnumerateOptions& opts = {});

// Inner engine: depth-first construction of RREF bases row by row,
// candidate rows tried in increasing integer value (bit 0 = point 0 =
// least significant).  A partial basis is dropped as soon as any span
// vector has weight != (v+1)/2; each qualifying subspace is emitted
// exactly once, as its unique RREF basis.
void weight_filtered_basis_search(std::uint64_t v, unsigned n,
                                  const std::function<void(std::span<const std::uint64_t>)>& emit);

} // namespace bibd
