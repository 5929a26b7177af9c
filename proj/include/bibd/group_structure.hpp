#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bibd/design.hpp"

namespace bibd {

// Outcome of the symmetric-difference closure test on a block set.
struct GroupCheckReport {
    bool closed = false;
    // First pair (i,j), i < j, whose symmetric difference escapes the
    // block set; scan order is lexicographic over canonical indices.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    std::optional<std::uint64_t> group_order; // b + 1 when closed
    std::optional<unsigned> dimension_n;      // log2(group_order)
    bool elementary_abelian = false;
};

GroupCheckReport delta_closure_check(const Design& d);

// Parameters forced on any delta-closed design: (4l-1, 4l-1, 2l, 2l, l).
DesignParams forced_params(std::uint64_t lambda);

// Both sides of the rank criterion, evaluated independently: the block
// set is closed iff the parameters are (2^n-1, 2^{n-1}, 2^{n-2}) with
// n the GF(2) rank of the incidence matrix.
struct Lemma2Report {
    bool closed = false;
    bool params_match = false;
    unsigned n_from_rank = 0;
    bool consistent = false; // closed <=> params_match
};

Lemma2Report lemma2_predicate(const Design& d); // requires verify_bibd to pass

struct HamadaBoundReport {
    unsigned n = 0;
    std::size_t rank = 0;
    bool bound_holds = false; // rank >= n
    bool equality = false;    // rank == n
};

// Requires parameters of the shape (2^n-1, 2^{n-1}, 2^{n-2}), n >= 2.
HamadaBoundReport hamada_bound_check(const Design& d);

struct SdpReport {
    bool is_sdp = false;
    // Triple i < j < k whose triple symmetric difference is neither a
    // block nor a block complement.
    std::optional<std::array<std::size_t, 3>> witness;
};

// Requires a symmetric design.
SdpReport sdp_check(const Design& d);

// Block addition X + Y = (base ^ X ^ Y) or its complement, whichever is
// a block.  Valid exactly on SDP designs.
struct KantorGroupResult {
    std::size_t base = 0;
    std::vector<std::vector<std::size_t>> table; // table[x][y] = index of X + Y
    bool valid = false;
    std::string issue; // empty when valid; "ambiguous sum ..." or axiom failure
};

KantorGroupResult kantor_group(const Design& d, std::size_t base);

struct GoodBlockReport {
    std::vector<bool> good_flags;
    // {block, complement-block} index pairs over the good blocks, the
    // smaller index first.
    std::vector<std::pair<std::size_t, std::size_t>> classes;
    bool group_table_ok = false;
    std::vector<std::size_t> complement_of; // partner index per block
};

// Requires a 3-design whose block set is closed under complementation.
GoodBlockReport good_block_classes(const Design& d);

// Class composition {B,~B} o {C,~C} = class of B ^ C, with the identity
// class adjoined.  Index 0 of the table is the identity class.
struct KimberleyGroupResult {
    std::size_t order = 0; // number of classes incl. identity
    std::vector<std::vector<std::size_t>> table;
    bool valid = false;
    std::string issue;
};

KimberleyGroupResult kimberley_group(const Design& d, const GoodBlockReport& report);

} // namespace bibd
