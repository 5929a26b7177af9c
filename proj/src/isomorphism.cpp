#include "bibd/isomorphism.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bibd {

PointPermutation::PointPermutation(std::vector<std::size_t> m) : mapping(std::move(m)) {
    std::vector<bool> seen(mapping.size(), false);
    for (std::size_t img : mapping) {
        if (img >= mapping.size() || seen[img])
            throw std::invalid_argument("PointPermutation: mapping is not a bijection");
        seen[img] = true;
    }
}

PointPermutation PointPermutation::identity(std::size_t v) {
    std::vector<std::size_t> m(v);
    for (std::size_t i = 0; i < v; ++i)
        m[i] = i;
    return PointPermutation(std::move(m));
}

std::string PointPermutation::to_line() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < mapping.size(); ++i)
        os << (i ? " " : "") << mapping[i];
    return os.str();
}

PointPermutation PointPermutation::from_line(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::size_t> m;
    long long x;
    while (is >> x) {
        if (x < 0)
            throw std::invalid_argument("PointPermutation: negative image");
        m.push_back(static_cast<std::size_t>(x));
    }
    return PointPermutation(std::move(m));
}

Design apply_permutation(const Design& d, const PointPermutation& p) {
    if (p.size() != d.v())
        throw std::invalid_argument("apply_permutation: permutation length differs from v");
    std::vector<BitVector> blocks;
    blocks.reserve(d.block_count());
    for (const auto& b : d.blocks()) {
        BitVector nb(d.v());
        for (std::size_t x : b.points())
            nb.set(p.mapping[x]);
        blocks.push_back(std::move(nb));
    }
    return Design(d.v(), std::move(blocks));
}

bool verify_certificate(const Design& d1, const Design& d2, const PointPermutation& p) {
    if (p.size() != d1.v() || d1.v() != d2.v())
        return false;
    return apply_permutation(d1, p) == d2;
}

namespace {

std::uint64_t block_mask(const BitVector& b) { return b.to_word(); }

// Backtracking search for the level-wise minimal incidence encoding.
// The encoding of a complete labeling is the key multiset sorted in
// descending order, a key giving canonical label l the bit v-1-l; two
// encodings are compared truncation level by truncation level.
struct CanonicalSearch {
    std::size_t v, b;
    std::vector<std::vector<std::size_t>> blocks_of_point; // original point -> block indices
    std::vector<std::uint64_t> keys;                       // partial keys per block
    std::vector<std::size_t> perm;                         // canonical label -> original point
    std::vector<bool> used;
    std::vector<std::uint64_t> best_keys;
    std::vector<std::size_t> best_perm;
    bool have_best = false;
    std::vector<std::uint64_t> scratch;

    std::vector<std::size_t> column_class; // points with equal columns share a class

    explicit CanonicalSearch(const Design& d)
        : v(d.v()), b(d.block_count()), blocks_of_point(d.v()), keys(d.block_count(), 0),
          perm(d.v(), 0), used(d.v(), false), scratch(d.block_count(), 0), column_class(d.v(), 0) {
        for (std::size_t j = 0; j < b; ++j)
            for (std::size_t x : d.block(j).points())
                blocks_of_point[x].push_back(j);
        // Points with identical incidence columns are swapped by an
        // automorphism, so one representative per class suffices at
        // each search depth.
        std::vector<std::vector<std::size_t>> reps;
        for (std::size_t p = 0; p < v; ++p) {
            auto it = std::find(reps.begin(), reps.end(), blocks_of_point[p]);
            if (it == reps.end()) {
                reps.push_back(blocks_of_point[p]);
                it = reps.end() - 1;
            }
            column_class[p] = static_cast<std::size_t>(it - reps.begin());
        }
    }

    void run() { dfs(0); }

    void dfs(std::size_t depth) {
        if (depth > 0 && have_best) {
            scratch = keys;
            std::sort(scratch.begin(), scratch.end(), std::greater<>());
            std::uint64_t mask = depth == 64 ? ~0ull : ((1ull << depth) - 1);
            mask <<= (v - depth);
            int cmp = 0;
            for (std::size_t j = 0; j < b; ++j) {
                std::uint64_t lhs = scratch[j];
                std::uint64_t rhs = best_keys[j] & mask;
                if (lhs != rhs) {
                    cmp = lhs < rhs ? -1 : 1;
                    break;
                }
            }
            if (cmp > 0)
                return;
            if (cmp < 0)
                have_best = false; // this subtree beats the incumbent
        }
        if (depth == v) {
            if (!have_best) {
                best_keys = keys;
                std::sort(best_keys.begin(), best_keys.end(), std::greater<>());
                best_perm = perm;
                have_best = true;
            }
            return;
        }
        std::uint64_t bit = 1ull << (v - 1 - depth);
        std::uint64_t tried_classes = 0;
        for (std::size_t p = 0; p < v; ++p) {
            if (used[p] || (tried_classes >> column_class[p]) & 1)
                continue;
            tried_classes |= 1ull << column_class[p];
            used[p] = true;
            perm[depth] = p;
            for (std::size_t j : blocks_of_point[p])
                keys[j] |= bit;
            dfs(depth + 1);
            for (std::size_t j : blocks_of_point[p])
                keys[j] &= ~bit;
            used[p] = false;
        }
    }
};

// Backtracking point-mapping search between two designs, pruning on
// the multiset of block restrictions to the mapped prefix.
struct IsoSearch {
    std::size_t v, b;
    std::vector<std::uint64_t> blocks1, blocks2;           // masks over original points
    std::vector<std::vector<std::uint64_t>> sorted_sig1;   // per depth, sorted restrictions of d1
    std::vector<std::vector<std::size_t>> blocks2_of_point;
    std::vector<std::uint64_t> sig2;
    std::vector<std::size_t> sigma;
    std::vector<bool> used;
    std::vector<std::uint64_t> scratch;
    bool count_all = false;
    std::uint64_t found = 0;
    std::optional<std::vector<std::size_t>> certificate;

    IsoSearch(const Design& d1, const Design& d2)
        : v(d1.v()), b(d1.block_count()), blocks2_of_point(d2.v()), sig2(d2.block_count(), 0),
          sigma(d1.v(), 0), used(d2.v(), false), scratch(d2.block_count(), 0) {
        for (const auto& blk : d1.blocks())
            blocks1.push_back(block_mask(blk));
        for (const auto& blk : d2.blocks())
            blocks2.push_back(block_mask(blk));
        for (std::size_t j = 0; j < blocks2.size(); ++j)
            for (std::size_t x : d2.block(j).points())
                blocks2_of_point[x].push_back(j);
        sorted_sig1.resize(v + 1);
        for (std::size_t d = 0; d <= v; ++d) {
            std::uint64_t mask = d == 64 ? ~0ull : ((1ull << d) - 1);
            for (std::uint64_t m : blocks1)
                sorted_sig1[d].push_back(m & mask);
            std::sort(sorted_sig1[d].begin(), sorted_sig1[d].end());
        }
    }

    void run() { dfs(0); }

    bool prefix_ok(std::size_t depth) {
        scratch = sig2;
        std::sort(scratch.begin(), scratch.end());
        return scratch == sorted_sig1[depth];
    }

    bool dfs(std::size_t depth) {
        if (depth == v) {
            ++found;
            if (!count_all) {
                certificate = sigma;
                return true; // stop at the first complete mapping
            }
            return false;
        }
        std::uint64_t bit = 1ull << depth;
        for (std::size_t q = 0; q < v; ++q) {
            if (used[q])
                continue;
            used[q] = true;
            sigma[depth] = q;
            for (std::size_t j : blocks2_of_point[q])
                sig2[j] |= bit;
            bool done = prefix_ok(depth + 1) && dfs(depth + 1);
            for (std::size_t j : blocks2_of_point[q])
                sig2[j] &= ~bit;
            used[q] = false;
            if (done)
                return true;
        }
        return false;
    }
};

} // namespace

CanonicalForm canonical_form(const Design& d) {
    if (d.v() > 63)
        throw std::invalid_argument("canonical_form: v exceeds the cap of 63");
    CanonicalSearch search(d);
    search.run();

    std::vector<BitVector> blocks;
    blocks.reserve(search.best_keys.size());
    for (std::uint64_t key : search.best_keys) {
        BitVector blk(d.v());
        for (std::size_t l = 0; l < d.v(); ++l)
            if (key & (1ull << (d.v() - 1 - l)))
                blk.set(l);
        blocks.push_back(std::move(blk));
    }
    // best_perm maps canonical label -> original point; invert it.
    std::vector<std::size_t> labeling(d.v(), 0);
    for (std::size_t l = 0; l < d.v(); ++l)
        labeling[search.best_perm[l]] = l;
    return CanonicalForm{Design(d.v(), std::move(blocks)), PointPermutation(std::move(labeling))};
}

std::optional<PointPermutation> are_isomorphic(const Design& d1, const Design& d2) {
    if (d1.v() != d2.v() || d1.block_count() != d2.block_count())
        return std::nullopt;
    if (d1.v() > 63)
        throw std::invalid_argument("are_isomorphic: v exceeds the cap of 63");
    std::vector<std::size_t> sizes1, sizes2;
    for (const auto& blk : d1.blocks())
        sizes1.push_back(blk.weight());
    for (const auto& blk : d2.blocks())
        sizes2.push_back(blk.weight());
    std::sort(sizes1.begin(), sizes1.end());
    std::sort(sizes2.begin(), sizes2.end());
    if (sizes1 != sizes2)
        return std::nullopt;

    IsoSearch search(d1, d2);
    search.run();
    if (!search.certificate)
        return std::nullopt;
    PointPermutation p(std::move(*search.certificate));
    if (!verify_certificate(d1, d2, p))
        throw std::logic_error("are_isomorphic: search produced an invalid certificate");
    return p;
}

std::uint64_t count_automorphisms(const Design& d) {
    if (d.v() > 63)
        throw std::invalid_argument("count_automorphisms: v exceeds the cap of 63");
    IsoSearch search(d, d);
    search.count_all = true;
    search.run();
    return search.found;
}

} // namespace bibd
