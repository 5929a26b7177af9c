#include "bibd/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "bibd/isomorphism.hpp"

namespace bibd {

namespace {

struct BasisSearch {
    std::uint64_t v;
    std::uint64_t w; // required weight of every span vector, (v+1)/2
    unsigned n;
    const std::function<void(std::span<const std::uint64_t>)>& emit;

    std::vector<std::uint64_t> rows;
    std::uint64_t rows_or = 0;
    std::vector<std::uint64_t> span;               // nonzero span vectors so far
    std::vector<std::vector<std::uint64_t>> lists; // per-depth candidate buffers

    BasisSearch(std::uint64_t v_, unsigned n_,
                const std::function<void(std::span<const std::uint64_t>)>& emit_)
        : v(v_), w((v_ + 1) / 2), n(n_), emit(emit_), lists(n_) {
        rows.reserve(n);
    }

    void run() {
        // Root candidates ascending: Gosper's hack over weight-w values.
        std::uint64_t limit = v == 64 ? ~0ull : (1ull << v);
        std::uint64_t c = (1ull << w) - 1;
        while (c < limit) {
            std::size_t mark = push_row(c);
            if (n == 1)
                emit(rows);
            else
                descend(1);
            pop_row(mark);
            std::uint64_t lo = c & (~c + 1);
            std::uint64_t left = c + lo;
            c = left | (((c ^ left) / lo) >> 2);
        }
    }

    // Returns the previous span size for pop_row.
    std::size_t push_row(std::uint64_t c) {
        std::size_t old = span.size();
        rows.push_back(c);
        rows_or |= c;
        span.push_back(c);
        for (std::size_t i = 0; i < old; ++i)
            span.push_back(c ^ span[i]);
        return old;
    }

    void pop_row(std::size_t span_mark) {
        rows.pop_back();
        span.resize(span_mark);
        rows_or = 0;
        for (std::uint64_t r : rows)
            rows_or |= r;
    }

    // Fills lists[depth] with candidates compatible with the current
    // rows and recurses; at depth n-1 every candidate completes a basis.
    void descend(unsigned depth) {
        auto& out = lists[depth];
        out.clear();
        if (depth == 1)
            first_extensions(out);
        else
            filter_extensions(lists[depth - 1], out);
        for (std::uint64_t c : out) {
            std::size_t mark = push_row(c);
            if (depth + 1 == n)
                emit(rows);
            else
                descend(depth + 1);
            pop_row(mark);
        }
    }

    // Candidates pairing half of r1's set bits with half of its clear
    // bits; exactly the weight-w vectors c with |c ^ r1| = w.
    void first_extensions(std::vector<std::uint64_t>& out) {
        std::uint64_t r1 = rows[0];
        std::vector<unsigned> set_bits, clear_bits;
        for (unsigned i = 0; i < v; ++i)
            ((r1 >> i) & 1 ? set_bits : clear_bits).push_back(i);
        unsigned h = static_cast<unsigned>(w / 2);
        std::vector<std::uint64_t> inside, outside;
        subset_masks(set_bits, h, inside);
        subset_masks(clear_bits, h, outside);
        unsigned p1 = static_cast<unsigned>(std::countr_zero(r1));
        for (std::uint64_t a : inside) {
            for (std::uint64_t b : outside) {
                std::uint64_t c = a | b;
                unsigned p = static_cast<unsigned>(std::countr_zero(c));
                if (p <= p1)
                    continue; // pivots must increase
                if ((r1 >> p) & 1)
                    continue; // existing rows must be zero at the new pivot
                out.push_back(c);
            }
        }
        std::sort(out.begin(), out.end());
    }

    static void subset_masks(const std::vector<unsigned>& positions, unsigned h,
                             std::vector<std::uint64_t>& out) {
        out.clear();
        if (h > positions.size())
            return;
        std::vector<unsigned> idx(h);
        for (unsigned i = 0; i < h; ++i)
            idx[i] = i;
        while (true) {
            std::uint64_t m = 0;
            for (unsigned i : idx)
                m |= 1ull << positions[i];
            out.push_back(m);
            unsigned i = h;
            while (i > 0 && idx[i - 1] == positions.size() - h + i - 1)
                --i;
            if (i == 0)
                break;
            ++idx[i - 1];
            for (unsigned j = i; j < h; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }

    void filter_extensions(const std::vector<std::uint64_t>& parent,
                           std::vector<std::uint64_t>& out) {
        std::uint64_t last = rows.back();
        unsigned last_pivot = static_cast<unsigned>(std::countr_zero(last));
        // Span vectors introduced by the last row: it and its sums with
        // the older span; the parent list is already compatible with
        // the older span.
        std::size_t new_count = (span.size() + 1) / 2;
        const std::uint64_t* new_span = span.data() + span.size() - new_count;
        for (std::uint64_t c : parent) {
            unsigned p = static_cast<unsigned>(std::countr_zero(c));
            if (p <= last_pivot)
                continue;
            if ((rows_or >> p) & 1)
                continue;
            bool ok = true;
            for (std::size_t i = 0; i < new_count; ++i) {
                if (static_cast<std::uint64_t>(std::popcount(c ^ new_span[i])) != w) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                out.push_back(c);
        }
    }
};

} // namespace

void weight_filtered_basis_search(std::uint64_t v, unsigned n,
                                  const std::function<void(std::span<const std::uint64_t>)>& emit) {
    if (v == 0 || v > 63)
        throw std::invalid_argument("weight_filtered_basis_search: v must be in 1..63");
    if (n == 0 || (1ull << n) - 1 != v)
        throw std::invalid_argument("weight_filtered_basis_search: v must equal 2^n - 1");
    BasisSearch search(v, n, emit);
    search.run();
}

namespace {

struct FastVerify {
    bool ok = false;
    std::uint64_t lambda = 0;
};

// verify_bibd specialized to word-sized blocks; avoids building Design
// objects on the hot path of the enumeration.
FastVerify fast_verify(std::uint64_t v, const std::vector<std::uint64_t>& blocks) {
    FastVerify res;
    std::size_t b = blocks.size();
    if (v < 2 || b == 0 || b > 64)
        return res;
    std::uint64_t k = static_cast<std::uint64_t>(std::popcount(blocks[0]));
    for (std::uint64_t blk : blocks)
        if (static_cast<std::uint64_t>(std::popcount(blk)) != k)
            return res;
    if (k < 2 || k >= v)
        return res;
    std::vector<std::uint64_t> mask(v, 0);
    for (std::size_t j = 0; j < b; ++j)
        for (std::uint64_t x = 0; x < v; ++x)
            mask[x] |= ((blocks[j] >> x) & 1) << j;
    std::uint64_t lambda = static_cast<std::uint64_t>(std::popcount(mask[0] & mask[1]));
    if (lambda == 0)
        return res;
    for (std::uint64_t x = 0; x < v; ++x)
        for (std::uint64_t y = x + 1; y < v; ++y)
            if (static_cast<std::uint64_t>(std::popcount(mask[x] & mask[y])) != lambda)
                return res;
    res.ok = true;
    res.lambda = lambda;
    return res;
}

Design design_from_words(std::uint64_t v, const std::vector<std::uint64_t>& blocks) {
    std::vector<BitVector> bv;
    bv.reserve(blocks.size());
    for (std::uint64_t blk : blocks)
        bv.push_back(BitVector::from_word(v, blk));
    return Design(v, std::move(bv));
}

} // namespace

EnumerationResult enumerate_delta_closed(std::uint64_t v, const EnumerateOptions& opts) {
    if (v < 3 || !std::has_single_bit(v + 1))
        throw std::invalid_argument("enumerate_delta_closed: v must be 2^n - 1 with n >= 2");
    unsigned n = static_cast<unsigned>(std::countr_zero(v + 1));
    if (n > 5 || (n == 5 && !opts.allow_long))
        throw std::invalid_argument(
            n == 5 ? "enumerate_delta_closed: v = 31 requires the long-run flag"
                   : "enumerate_delta_closed: n beyond 5 is not supported");

    EnumerationResult result;
    result.v = v;
    result.n = n;

    // Classes are keyed by the sorted multiset of point columns of the
    // RREF generator: equal multisets force an isomorphism outright (a
    // column-matching permutation carries one subspace to the other);
    // distinct multisets are settled by are_isomorphic against the
    // existing representatives.
    std::unordered_map<std::string, std::size_t> class_of_fingerprint;
    std::vector<std::uint64_t> span_blocks;
    std::string fingerprint;

    auto handle = [&](std::span<const std::uint64_t> basis) {
        span_blocks.clear();
        span_blocks.push_back(basis[0]);
        for (std::size_t i = 1; i < basis.size(); ++i) {
            std::size_t old = span_blocks.size();
            span_blocks.push_back(basis[i]);
            for (std::size_t j = 0; j < old; ++j)
                span_blocks.push_back(basis[i] ^ span_blocks[j]);
        }
        ++result.labeled_count;
        if (!fast_verify(v, span_blocks).ok)
            result.all_bibd = false;

        fingerprint.assign(v, '\0');
        for (std::uint64_t x = 0; x < v; ++x) {
            unsigned col = 0;
            for (std::size_t i = 0; i < basis.size(); ++i)
                col |= static_cast<unsigned>((basis[i] >> x) & 1) << i;
            fingerprint[x] = static_cast<char>(col);
        }
        std::sort(fingerprint.begin(), fingerprint.end());

        auto it = class_of_fingerprint.find(fingerprint);
        std::size_t cls;
        if (it != class_of_fingerprint.end()) {
            cls = it->second;
        } else {
            Design d = design_from_words(v, span_blocks);
            cls = result.class_representatives.size();
            for (std::size_t c = 0; c < result.class_representatives.size(); ++c) {
                if (are_isomorphic(d, result.class_representatives[c])) {
                    cls = c;
                    break;
                }
            }
            if (cls == result.class_representatives.size()) {
                result.class_representatives.push_back(std::move(d));
                result.class_sizes.push_back(0);
            }
            class_of_fingerprint.emplace(fingerprint, cls);
        }
        ++result.class_sizes[cls];
        if (opts.heartbeat && result.labeled_count % (1u << 22) == 0)
            opts.heartbeat(result.labeled_count);
    };

    weight_filtered_basis_search(v, n, handle);
    return result;
}

} // namespace bibd
