#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bibd/design.hpp"

namespace bibd {

// A bijection on point indices 0..v-1; mapping[x] is the image of x.
struct PointPermutation {
    std::vector<std::size_t> mapping;

    explicit PointPermutation(std::vector<std::size_t> m);
    static PointPermutation identity(std::size_t v);
    std::size_t size() const { return mapping.size(); }

    std::string to_line() const; // v space-separated images
    static PointPermutation from_line(const std::string& line);
};

// Relabels points through p; blocks re-sorted canonically.
Design apply_permutation(const Design& d, const PointPermutation& p);

struct CanonicalForm {
    Design design;            // relabeled copy
    PointPermutation labeling; // input points -> canonical points
};

// Identical for isomorphic inputs, distinct otherwise.  Backtracking
// over point labelings, minimizing the incidence encoding level by
// level with prefix pruning.  Capped at v <= 63.
CanonicalForm canonical_form(const Design& d);

// Certificate permutation p with apply_permutation(d1, p) == d2, or
// nullopt after an exhaustive refinement search.
std::optional<PointPermutation> are_isomorphic(const Design& d1, const Design& d2);

// Number of point permutations mapping the block set onto itself.
std::uint64_t count_automorphisms(const Design& d);

// True iff apply_permutation(d1, p) equals d2 as a block set.  Kept
// independent of the search code path.
bool verify_certificate(const Design& d1, const Design& d2, const PointPermutation& p);

} // namespace bibd
