#include "bibd/design.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bibd {

Design::Design(std::size_t v, std::vector<BitVector> blocks) : v_(v), blocks_(std::move(blocks)) {
    if (v == 0 || v > BitVector::max_length)
        throw std::invalid_argument("Design: v must be in 1..1023");
    for (const auto& b : blocks_)
        if (b.length() != v)
            throw std::invalid_argument("Design: block length differs from v");
    std::sort(blocks_.begin(), blocks_.end(),
              [](const BitVector& a, const BitVector& b) { return a.lex_less(b); });
    blocks_.erase(std::unique(blocks_.begin(), blocks_.end()), blocks_.end());
}

Design Design::from_point_lists(std::size_t v,
                                const std::vector<std::vector<std::size_t>>& blocks) {
    std::vector<BitVector> bv;
    bv.reserve(blocks.size());
    for (const auto& pts : blocks)
        bv.push_back(BitVector::from_points(v, pts));
    return Design(v, std::move(bv));
}

namespace {

// Per-point incidence masks: mask[x] has bit j set iff point x lies in
// block j.  Pair coverage is then one AND + popcount.
std::vector<BitVector> point_masks(const Design& d) {
    std::vector<BitVector> masks(d.v(), BitVector(d.block_count()));
    for (std::size_t j = 0; j < d.block_count(); ++j)
        for (std::size_t x : d.block(j).points())
            masks[x].set(j);
    return masks;
}

} // namespace

VerifyOutcome verify_bibd(const Design& d) {
    VerifyOutcome out;
    auto reject = [&](Rejection r) {
        out.rejection = std::move(r);
        return out;
    };

    if (d.v() < 2)
        return reject({Rejection::Kind::too_few_points, "a design needs at least 2 points", {}, {}});
    if (d.block_count() == 0)
        return reject({Rejection::Kind::no_blocks, "a design needs at least one block", {}, {}});

    std::size_t k = d.block(0).weight();
    for (std::size_t j = 1; j < d.block_count(); ++j) {
        if (d.block(j).weight() != k) {
            std::ostringstream msg;
            msg << "block " << j << " has size " << d.block(j).weight()
                << ", expected " << k << " from block 0";
            return reject({Rejection::Kind::non_uniform_block_size, msg.str(), j, {}});
        }
    }
    if (k < 2 || k >= d.v()) {
        std::ostringstream msg;
        msg << "block size " << k << " violates v > k >= 2 (v = " << d.v() << ")";
        return reject({Rejection::Kind::block_size_out_of_range, msg.str(), std::size_t{0}, {}});
    }

    auto masks = point_masks(d);
    std::uint64_t lambda = (masks[0] & masks[1]).weight();
    for (std::size_t x = 0; x < d.v(); ++x) {
        for (std::size_t y = x + 1; y < d.v(); ++y) {
            std::uint64_t c = (masks[x] & masks[y]).weight();
            if (c != lambda) {
                std::ostringstream msg;
                msg << "pair (" << x << "," << y << ") covered " << c
                    << " times, pair (0,1) covered " << lambda << " times";
                return reject({Rejection::Kind::unbalanced_pair, msg.str(), {},
                               std::make_pair(x, y)});
            }
        }
    }
    if (lambda == 0) {
        return reject({Rejection::Kind::unbalanced_pair,
                       "pair coverage is 0; not a balanced design", {},
                       std::make_pair(std::size_t{0}, std::size_t{1})});
    }

    DesignParams p;
    p.v = d.v();
    p.b = d.block_count();
    p.k = k;
    p.lambda = lambda;
    p.r = lambda * (p.v - 1) / (p.k - 1); // integral once pair coverage is constant
    out.params = p;
    return out;
}

SymmetryReport is_symmetric(const Design& d) {
    auto outcome = verify_bibd(d);
    if (!outcome.ok())
        throw std::invalid_argument("is_symmetric: design is not a BIBD");
    SymmetryReport rep;
    rep.symmetric = outcome.params->v == outcome.params->b;
    if (!rep.symmetric)
        return rep;
    std::uint64_t size = (d.block(0) & d.block(1)).weight();
    for (std::size_t i = 0; i < d.block_count(); ++i)
        for (std::size_t j = i + 1; j < d.block_count(); ++j)
            if ((d.block(i) & d.block(j)).weight() != size)
                throw std::logic_error("symmetric design with non-constant block intersections");
    rep.intersection_size = size;
    return rep;
}

std::optional<std::uint64_t> coverage_number(const Design& d, std::size_t t) {
    if (t == 0)
        throw std::invalid_argument("coverage_number: t must be positive");
    if (d.block_count() == 0)
        throw std::invalid_argument("coverage_number: design has no blocks");
    std::size_t k = d.block(0).weight();
    for (const auto& b : d.blocks())
        if (b.weight() != k)
            throw std::invalid_argument("coverage_number: block sizes not uniform");
    if (t > k)
        throw std::invalid_argument("coverage_number: t exceeds the block size");

    auto masks = point_masks(d);
    std::vector<std::size_t> subset(t);
    std::optional<std::uint64_t> lambda_t;
    bool balanced = true;

    // Iterate all t-subsets of points in lexicographic order.
    for (std::size_t i = 0; i < t; ++i)
        subset[i] = i;
    while (true) {
        BitVector common = masks[subset[0]];
        for (std::size_t i = 1; i < t; ++i)
            common = common & masks[subset[i]];
        std::uint64_t c = common.weight();
        if (!lambda_t)
            lambda_t = c;
        else if (c != *lambda_t) {
            balanced = false;
            break;
        }
        // next combination
        std::size_t i = t;
        while (i > 0 && subset[i - 1] == d.v() - t + i - 1)
            --i;
        if (i == 0)
            break;
        ++subset[i - 1];
        for (std::size_t j = i; j < t; ++j)
            subset[j] = subset[j - 1] + 1;
    }
    if (!balanced)
        return std::nullopt;
    return lambda_t;
}

Design complement_design(const Design& d) {
    std::vector<BitVector> blocks;
    blocks.reserve(d.block_count());
    for (const auto& b : d.blocks()) {
        std::size_t w = b.weight();
        if (w == 0 || w == d.v())
            throw std::invalid_argument(
                "complement_design: a block's complement would be empty or full");
        blocks.push_back(b.complement());
    }
    return Design(d.v(), std::move(blocks));
}

GF2Matrix incidence_matrix(const Design& d) {
    std::vector<BitVector> rows(d.v(), BitVector(d.block_count()));
    for (std::size_t j = 0; j < d.block_count(); ++j)
        for (std::size_t x : d.block(j).points())
            rows[x].set(j);
    return GF2Matrix(std::move(rows));
}

Design design_from_incidence(const GF2Matrix& m) {
    std::vector<BitVector> blocks(m.col_count(), BitVector(m.row_count()));
    for (std::size_t i = 0; i < m.row_count(); ++i)
        for (std::size_t j : m.row(i).points())
            blocks[j].set(i);
    return Design(m.row_count(), std::move(blocks));
}

Design parse_design(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line))
        throw ParseError{1, "empty input, expected DESIGN header"};
    ++lineno;
    std::istringstream header(line);
    std::string tag;
    std::size_t v = 0, b = 0;
    if (!(header >> tag >> v >> b) || tag != "DESIGN")
        throw ParseError{lineno, "expected header 'DESIGN <v> <b>'"};
    std::string rest;
    if (header >> rest)
        throw ParseError{lineno, "trailing tokens after DESIGN header"};
    if (v == 0 || v > BitVector::max_length)
        throw ParseError{lineno, "v out of range 1..1023"};

    std::vector<BitVector> blocks;
    for (std::size_t j = 0; j < b; ++j) {
        if (!std::getline(in, line))
            throw ParseError{lineno + 1, "unexpected end of file: block count mismatch"};
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::size_t> pts;
        long long x;
        while (ls >> x) {
            if (x < 0 || static_cast<std::size_t>(x) >= v)
                throw ParseError{lineno, "point index out of range 0..v-1"};
            if (!pts.empty()) {
                if (static_cast<std::size_t>(x) == pts.back())
                    throw ParseError{lineno, "duplicate point within a block"};
                if (static_cast<std::size_t>(x) < pts.back())
                    throw ParseError{lineno, "points within a block must be increasing"};
            }
            pts.push_back(static_cast<std::size_t>(x));
        }
        if (!ls.eof())
            throw ParseError{lineno, "malformed point index"};
        if (pts.empty())
            throw ParseError{lineno, "empty block line"};
        blocks.push_back(BitVector::from_points(v, pts));
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty())
            throw ParseError{lineno, "trailing content after last block"};
    }
    Design d(v, std::move(blocks));
    if (d.block_count() != b)
        throw ParseError{lineno, "duplicate blocks: block count mismatch"};
    return d;
}

Design parse_design_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError{0, "cannot open file: " + path};
    return parse_design(in);
}

void write_design(std::ostream& out, const Design& d) {
    out << "DESIGN " << d.v() << ' ' << d.block_count() << '\n';
    for (const auto& b : d.blocks()) {
        auto pts = b.points();
        for (std::size_t i = 0; i < pts.size(); ++i)
            out << (i ? " " : "") << pts[i];
        out << '\n';
    }
}

std::string design_to_text(const Design& d) {
    std::ostringstream os;
    write_design(os, d);
    return os.str();
}

} // namespace bibd
