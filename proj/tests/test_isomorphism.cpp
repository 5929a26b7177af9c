#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "bibd/constructions.hpp"
#include "bibd/isomorphism.hpp"

using namespace bibd;

namespace {

Design fano() {
    return Design::from_point_lists(
        7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

PointPermutation random_perm(std::size_t v, std::mt19937_64& rng) {
    std::vector<std::size_t> m(v);
    std::iota(m.begin(), m.end(), std::size_t{0});
    std::shuffle(m.begin(), m.end(), rng);
    return PointPermutation(std::move(m));
}

// Exhaustive oracle: try all v! permutations.  Only usable for v <= 8.
bool iso_oracle(const Design& d1, const Design& d2) {
    if (d1.v() != d2.v())
        return false;
    std::vector<std::size_t> m(d1.v());
    std::iota(m.begin(), m.end(), std::size_t{0});
    do {
        if (apply_permutation(d1, PointPermutation(m)) == d2)
            return true;
    } while (std::next_permutation(m.begin(), m.end()));
    return false;
}

} // namespace

TEST_CASE("apply_permutation basics") {
    Design d = Design::from_point_lists(4, {{0, 1}, {1, 2}});
    CHECK(apply_permutation(d, PointPermutation::identity(4)) == d);

    // swap 0 <-> 3
    Design swapped = apply_permutation(d, PointPermutation({3, 1, 2, 0}));
    CHECK(swapped == Design::from_point_lists(4, {{1, 3}, {1, 2}}));

    CHECK_THROWS_AS(PointPermutation({0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(PointPermutation({0, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(apply_permutation(d, PointPermutation({0, 1, 2})),
                    std::invalid_argument);
}

TEST_CASE("apply_permutation composes and inverts") {
    std::mt19937_64 rng(3);
    Design d = pg_complement(3);
    for (int trial = 0; trial < 100; ++trial) {
        PointPermutation p = random_perm(7, rng);
        Design image = apply_permutation(d, p);
        std::vector<std::size_t> inv(7);
        for (std::size_t i = 0; i < 7; ++i)
            inv[p.mapping[i]] = i;
        CHECK(apply_permutation(image, PointPermutation(inv)) == d);
        // block count and sizes are invariants
        CHECK(image.block_count() == d.block_count());
    }
}

TEST_CASE("permutation line format round-trips") {
    PointPermutation p({2, 0, 1, 3});
    CHECK(PointPermutation::from_line(p.to_line()).mapping == p.mapping);
    CHECK_THROWS(PointPermutation::from_line("0 0 1"));
}

TEST_CASE("canonical_form is invariant under relabeling") {
    std::mt19937_64 rng(13);
    Design base = pg_complement(3);
    Design canon = canonical_form(base).design;
    for (int trial = 0; trial < 50; ++trial) {
        Design relabeled = apply_permutation(base, random_perm(7, rng));
        auto cf = canonical_form(relabeled);
        CHECK(cf.design == canon);
        // The labeling is its own certificate.
        CHECK(apply_permutation(relabeled, cf.labeling) == cf.design);
    }
}

TEST_CASE("canonical_form is idempotent and separates non-isomorphic designs") {
    auto c1 = canonical_form(fano());
    auto c2 = canonical_form(pg_complement(3));
    CHECK(canonical_form(c1.design).design == c1.design);
    CHECK(canonical_form(c2.design).design == c2.design);
    CHECK(c1.design != c2.design);

    // Complementary but non-isomorphic as block sets (k differs).
    CHECK(canonical_form(pg_hyperplanes(4)).design !=
          canonical_form(pg_complement(4)).design);
}

TEST_CASE("are_isomorphic returns a verified certificate") {
    std::mt19937_64 rng(29);
    for (const Design& base : {fano(), pg_complement(3), sdp_biplane(), pg_complement(4)}) {
        Design relabeled = apply_permutation(base, random_perm(base.v(), rng));
        auto cert = are_isomorphic(base, relabeled);
        REQUIRE(cert.has_value());
        CHECK(verify_certificate(base, relabeled, *cert));
    }
}

TEST_CASE("are_isomorphic screens mismatched parameters") {
    CHECK_FALSE(are_isomorphic(fano(), pg_complement(3)).has_value());       // k differs
    CHECK_FALSE(are_isomorphic(pg_complement(3), pg_complement(4)).has_value());
    CHECK_FALSE(are_isomorphic(pg_hyperplanes(4), pg_complement(4)).has_value());
}

TEST_CASE("are_isomorphic agrees with the exhaustive permutation oracle") {
    std::mt19937_64 rng(37);
    // small designs on <= 7 points, including non-BIBD block sets
    std::vector<Design> pool = {
        fano(),
        pg_complement(3),
        Design::from_point_lists(6, {{0, 1}, {2, 3}, {4, 5}}),
        Design::from_point_lists(6, {{0, 1}, {1, 2}, {2, 0}}),
        Design::from_point_lists(6, {{0, 1}, {1, 2}, {2, 3}}),
        Design::from_point_lists(7, {{0, 1, 2}, {0, 3, 4}}),
        Design::from_point_lists(7, {{0, 1, 2}, {3, 4, 5}}),
    };
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = 0; j < pool.size(); ++j) {
            Design rhs = apply_permutation(pool[j], random_perm(pool[j].v(), rng));
            bool expected = pool[i].v() == rhs.v() && iso_oracle(pool[i], rhs);
            auto cert = are_isomorphic(pool[i], rhs);
            CHECK(cert.has_value() == expected);
            if (cert)
                CHECK(verify_certificate(pool[i], rhs, *cert));
        }
}

TEST_CASE("verify_certificate rejects perturbed certificates") {
    std::mt19937_64 rng(53);
    Design d1 = pg_complement(3);
    Design d2 = apply_permutation(d1, random_perm(7, rng));
    auto cert = are_isomorphic(d1, d2);
    REQUIRE(cert.has_value());
    REQUIRE(verify_certificate(d1, d2, *cert));
    // Swapping two images breaks the certificate unless the swap is an
    // automorphism of the image; count how many of the 21 swaps fail.
    std::size_t broken = 0;
    for (std::size_t a = 0; a < 7; ++a)
        for (std::size_t b = a + 1; b < 7; ++b) {
            auto m = cert->mapping;
            std::swap(m[a], m[b]);
            if (!verify_certificate(d1, d2, PointPermutation(m)))
                ++broken;
        }
    CHECK(broken == 21); // no transposition fixes this design
}

TEST_CASE("count_automorphisms") {
    CHECK(count_automorphisms(fano()) == 168);
    CHECK(count_automorphisms(pg_complement(3)) == 168);
    CHECK(count_automorphisms(pg_complement(4)) == 20160);
    CHECK(count_automorphisms(Design::from_point_lists(3, {{0, 1}})) == 2);

    // Automorphism count is a relabeling invariant.
    std::mt19937_64 rng(59);
    Design relabeled = apply_permutation(fano(), random_perm(7, rng));
    CHECK(count_automorphisms(relabeled) == 168);
}

TEST_CASE("canonical_form rejects designs beyond the point cap") {
    std::vector<std::vector<std::size_t>> one_block{{0, 1}};
    CHECK_THROWS_AS(canonical_form(Design::from_point_lists(64, one_block)),
                    std::invalid_argument);
    CHECK_NOTHROW(canonical_form(Design::from_point_lists(63, one_block)));
}
