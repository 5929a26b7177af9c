#include "bibd/group_structure.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace bibd {

namespace {

std::unordered_map<BitVector, std::size_t, BitVectorHash> block_index(const Design& d) {
    std::unordered_map<BitVector, std::size_t, BitVectorHash> idx;
    idx.reserve(d.block_count());
    for (std::size_t i = 0; i < d.block_count(); ++i)
        idx.emplace(d.block(i), i);
    return idx;
}

} // namespace

GroupCheckReport delta_closure_check(const Design& d) {
    if (d.block_count() == 0)
        throw std::invalid_argument("delta_closure_check: design has no blocks");
    for (const auto& b : d.blocks())
        if (b.none())
            throw std::invalid_argument("delta_closure_check: empty block");

    GroupCheckReport rep;
    auto idx = block_index(d);
    for (std::size_t i = 0; i < d.block_count(); ++i) {
        for (std::size_t j = i + 1; j < d.block_count(); ++j) {
            if (!idx.contains(d.block(i) ^ d.block(j))) {
                rep.closed = false;
                rep.witness = {i, j};
                return rep;
            }
        }
    }
    rep.closed = true;
    rep.group_order = d.block_count() + 1;
    if (!std::has_single_bit(*rep.group_order))
        throw std::logic_error("delta-closed block set whose order is not a power of two");
    rep.dimension_n = static_cast<unsigned>(std::countr_zero(*rep.group_order));
    rep.elementary_abelian = true; // every element is its own inverse under xor
    return rep;
}

DesignParams forced_params(std::uint64_t lambda) {
    if (lambda == 0)
        throw std::invalid_argument("forced_params: lambda must be positive");
    DesignParams p;
    p.v = p.b = 4 * lambda - 1;
    p.k = p.r = 2 * lambda;
    p.lambda = lambda;
    return p;
}

Lemma2Report lemma2_predicate(const Design& d) {
    auto outcome = verify_bibd(d);
    if (!outcome.ok())
        throw std::invalid_argument("lemma2_predicate: design is not a BIBD");
    Lemma2Report rep;
    rep.closed = delta_closure_check(d).closed;
    rep.n_from_rank = static_cast<unsigned>(gf2_rank(incidence_matrix(d)));
    unsigned n = rep.n_from_rank;
    if (n >= 2 && n < 64) {
        DesignParams expected;
        expected.v = expected.b = (1ull << n) - 1;
        expected.k = expected.r = 1ull << (n - 1);
        expected.lambda = 1ull << (n - 2);
        rep.params_match = (*outcome.params == expected);
    }
    rep.consistent = (rep.closed == rep.params_match);
    return rep;
}

HamadaBoundReport hamada_bound_check(const Design& d) {
    auto outcome = verify_bibd(d);
    if (!outcome.ok())
        throw std::invalid_argument("hamada_bound_check: design is not a BIBD");
    const DesignParams& p = *outcome.params;
    std::uint64_t vp1 = p.v + 1;
    if (!std::has_single_bit(vp1))
        throw std::invalid_argument("hamada_bound_check: v + 1 is not a power of two");
    unsigned n = static_cast<unsigned>(std::countr_zero(vp1));
    if (n < 2 || p.b != p.v || p.k != (1ull << (n - 1)) || p.lambda != (1ull << (n - 2)))
        throw std::invalid_argument(
            "hamada_bound_check: parameters are not (2^n-1, 2^{n-1}, 2^{n-2})");
    HamadaBoundReport rep;
    rep.n = n;
    rep.rank = gf2_rank(incidence_matrix(d));
    rep.bound_holds = rep.rank >= n;
    rep.equality = rep.rank == n;
    return rep;
}

SdpReport sdp_check(const Design& d) {
    auto sym = is_symmetric(d); // also enforces the BIBD precondition
    if (!sym.symmetric)
        throw std::invalid_argument("sdp_check: design is not symmetric");
    auto idx = block_index(d);
    SdpReport rep;
    // Triples with a repeated block reduce to B ^ B ^ D = D, always a
    // block; only distinct triples need scanning.
    for (std::size_t i = 0; i < d.block_count(); ++i) {
        for (std::size_t j = i + 1; j < d.block_count(); ++j) {
            BitVector ij = d.block(i) ^ d.block(j);
            for (std::size_t k = j + 1; k < d.block_count(); ++k) {
                BitVector s = ij ^ d.block(k);
                if (!idx.contains(s) && !idx.contains(s.complement())) {
                    rep.is_sdp = false;
                    rep.witness = {{i, j, k}};
                    return rep;
                }
            }
        }
    }
    rep.is_sdp = true;
    return rep;
}

KantorGroupResult kantor_group(const Design& d, std::size_t base) {
    if (base >= d.block_count())
        throw std::invalid_argument("kantor_group: base block index out of range");
    auto sdp = sdp_check(d);
    if (!sdp.is_sdp)
        throw std::invalid_argument("kantor_group: design does not have the SDP");

    KantorGroupResult res;
    res.base = base;
    std::size_t b = d.block_count();
    auto idx = block_index(d);
    res.table.assign(b, std::vector<std::size_t>(b, 0));
    auto fail = [&](std::string msg) {
        res.valid = false;
        res.issue = std::move(msg);
        return res;
    };

    for (std::size_t x = 0; x < b; ++x) {
        for (std::size_t y = x; y < b; ++y) {
            BitVector s = d.block(base) ^ d.block(x) ^ d.block(y);
            auto direct = idx.find(s);
            auto compl_it = idx.find(s.complement());
            if (direct != idx.end() && compl_it != idx.end()) {
                std::ostringstream msg;
                msg << "ambiguous sum: both candidates for blocks " << x << " + " << y
                    << " are blocks";
                return fail(msg.str());
            }
            if (direct == idx.end() && compl_it == idx.end()) {
                std::ostringstream msg;
                msg << "no sum: neither candidate for blocks " << x << " + " << y
                    << " is a block (non-SDP input)";
                return fail(msg.str());
            }
            std::size_t sum = direct != idx.end() ? direct->second : compl_it->second;
            res.table[x][y] = res.table[y][x] = sum;
        }
    }

    // Group axioms: neutral base, exponent 2, associativity.
    for (std::size_t x = 0; x < b; ++x) {
        if (res.table[base][x] != x)
            return fail("base block is not neutral");
        if (res.table[x][x] != base)
            return fail("an element is not self-inverse");
    }
    for (std::size_t x = 0; x < b; ++x)
        for (std::size_t y = 0; y < b; ++y)
            for (std::size_t z = 0; z < b; ++z)
                if (res.table[res.table[x][y]][z] != res.table[x][res.table[y][z]])
                    return fail("addition is not associative");
    res.valid = true;
    return res;
}

GoodBlockReport good_block_classes(const Design& d) {
    auto idx = block_index(d);
    GoodBlockReport rep;
    std::size_t b = d.block_count();
    rep.complement_of.assign(b, 0);
    for (std::size_t i = 0; i < b; ++i) {
        auto it = idx.find(d.block(i).complement());
        if (it == idx.end())
            throw std::invalid_argument(
                "good_block_classes: block set is not closed under complementation");
        rep.complement_of[i] = it->second;
    }
    if (!coverage_number(d, 3).has_value())
        throw std::invalid_argument("good_block_classes: design is not a 3-design");

    rep.good_flags.assign(b, true);
    for (std::size_t i = 0; i < b; ++i) {
        for (std::size_t j = 0; j < b && rep.good_flags[i]; ++j) {
            if (j == i || j == rep.complement_of[i])
                continue;
            if (!idx.contains(d.block(i) ^ d.block(j)))
                rep.good_flags[i] = false;
        }
    }
    for (std::size_t i = 0; i < b; ++i) {
        std::size_t c = rep.complement_of[i];
        if (rep.good_flags[i] != rep.good_flags[c])
            throw std::logic_error("good flag differs within a complement pair");
        if (rep.good_flags[i] && i < c)
            rep.classes.emplace_back(i, c);
    }
    rep.group_table_ok = !rep.classes.empty() && kimberley_group(d, rep).valid;
    return rep;
}

KimberleyGroupResult kimberley_group(const Design& d, const GoodBlockReport& report) {
    KimberleyGroupResult res;
    if (report.classes.empty()) {
        res.issue = "no good block classes";
        return res;
    }
    std::size_t m = report.classes.size();
    res.order = m + 1; // classes plus the identity class {X, empty}
    auto idx = block_index(d);

    // Map a block index to its class index (1-based; 0 is the identity).
    std::vector<std::size_t> class_of(d.block_count(), SIZE_MAX);
    for (std::size_t c = 0; c < m; ++c) {
        class_of[report.classes[c].first] = c + 1;
        class_of[report.classes[c].second] = c + 1;
    }

    res.table.assign(res.order, std::vector<std::size_t>(res.order, 0));
    auto fail = [&](std::string msg) {
        res.valid = false;
        res.issue = std::move(msg);
        return res;
    };
    for (std::size_t i = 0; i <= m; ++i)
        res.table[0][i] = res.table[i][0] = i;
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = i; j <= m; ++j) {
            BitVector s = d.block(report.classes[i - 1].first) ^
                          d.block(report.classes[j - 1].first);
            std::size_t cls;
            if (s.none()) {
                cls = 0;
            } else {
                auto it = idx.find(s);
                if (it == idx.end())
                    return fail("closure failure: a class composition is not a block");
                cls = class_of[it->second];
                if (cls == SIZE_MAX)
                    return fail("closure failure: a class composition lands on a non-good block");
            }
            res.table[i][j] = res.table[j][i] = cls;
        }
    }
    for (std::size_t i = 0; i <= m; ++i)
        if (res.table[i][i] != 0)
            return fail("a class is not self-inverse");
    for (std::size_t x = 0; x <= m; ++x)
        for (std::size_t y = 0; y <= m; ++y)
            for (std::size_t z = 0; z <= m; ++z)
                if (res.table[res.table[x][y]][z] != res.table[x][res.table[y][z]])
                    return fail("class composition is not associative");
    res.valid = true;
    return res;
}

} // namespace bibd
