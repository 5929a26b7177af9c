#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bibd/bitvector.hpp"
#include "bibd/gf2_matrix.hpp"

namespace bibd {

// A block design: v points labeled 0..v-1 and an ordered list of
// distinct blocks, each a characteristic vector of length v.  Blocks
// are sorted canonically (lexicographic on point lists) and
// deduplicated at construction, so equality of designs is equality of
// the sorted block lists.
class Design {
public:
    Design(std::size_t v, std::vector<BitVector> blocks);

    static Design from_point_lists(std::size_t v,
                                   const std::vector<std::vector<std::size_t>>& blocks);

    std::size_t v() const { return v_; }
    std::size_t block_count() const { return blocks_.size(); }
    const BitVector& block(std::size_t i) const { return blocks_.at(i); }
    const std::vector<BitVector>& blocks() const { return blocks_; }

    bool operator==(const Design& other) const = default;

private:
    std::size_t v_;
    std::vector<BitVector> blocks_;
};

struct DesignParams {
    std::uint64_t v = 0;
    std::uint64_t b = 0;
    std::uint64_t k = 0;
    std::uint64_t lambda = 0;
    std::uint64_t r = 0;

    bool symmetric() const { return v == b; }
    bool operator==(const DesignParams&) const = default;
};

struct Rejection {
    enum class Kind {
        too_few_points,
        no_blocks,
        non_uniform_block_size,
        block_size_out_of_range,
        unbalanced_pair,
    };
    Kind kind;
    std::string message;
    // First violation in deterministic scan order: block sizes first,
    // then point pairs lexicographically.
    std::optional<std::size_t> block_witness;
    std::optional<std::pair<std::size_t, std::size_t>> pair_witness;
};

struct VerifyOutcome {
    std::optional<DesignParams> params;
    std::optional<Rejection> rejection;
    bool ok() const { return params.has_value(); }
};

VerifyOutcome verify_bibd(const Design& d);

struct SymmetryReport {
    bool symmetric = false;
    std::optional<std::uint64_t> intersection_size; // set when symmetric
};

// Requires verify_bibd to have succeeded on d.
SymmetryReport is_symmetric(const Design& d);

// lambda_t when every t-subset of points lies in the same number of
// blocks, nullopt otherwise.  Block sizes must be uniform and t <= k.
std::optional<std::uint64_t> coverage_number(const Design& d, std::size_t t);

// Replaces every block by its complement in the point set.  Involution.
Design complement_design(const Design& d);

// v x b matrix, column j the characteristic vector of block j.
GF2Matrix incidence_matrix(const Design& d);
Design design_from_incidence(const GF2Matrix& m);

// --- canonical text format ----------------------------------------------
//
//   DESIGN <v> <b>
//   <b lines of strictly increasing 0-based point indices>

struct ParseError {
    std::size_t line; // 1-based
    std::string message;
};

Design parse_design(std::istream& in);     // throws ParseError
Design parse_design_file(const std::string& path);
void write_design(std::ostream& out, const Design& d);
std::string design_to_text(const Design& d);

} // namespace bibd
