#include <gtest/gtest.h>

#include <bit>

#include "support/oracles.hpp"

using namespace cascade;

namespace {

// Transposition (a b) on n points.
Permutation swap_of(std::size_t n, std::uint32_t a, std::uint32_t b) {
    auto p = identity_permutation(n);
    std::swap(p[a], p[b]);
    return p;
}

std::set<std::set<std::uint32_t>> as_sets(const std::vector<Orbit>& orbits) {
    std::set<std::set<std::uint32_t>> out;
    for (const auto& o : orbits) {
        out.emplace(o.begin(), o.end());
    }
    return out;
}

}  // namespace

TEST(CloseGroup, Examples) {
    EXPECT_EQ(close_group(3, {swap_of(3, 0, 1)}).order(), 2U);
    EXPECT_EQ(close_group(4, {swap_of(4, 0, 1), swap_of(4, 2, 3)}).order(), 4U);
    try {
        (void)close_group(3, {Permutation{1, 2, 0}});
        FAIL() << "3-cycle accepted";
    } catch (const CertificateError& e) {
        EXPECT_NE(std::string(e.what()).find("(0 1 2)"), std::string::npos);
    }
}

TEST(CloseGroup, OddWitnessFromEvenOrderElement) {
    // A 6-cycle generates a group of order 6; the witness is its square.
    try {
        (void)close_group(6, {Permutation{1, 2, 3, 4, 5, 0}});
        FAIL();
    } catch (const CertificateError& e) {
        EXPECT_NE(std::string(e.what()).find("odd order 3"), std::string::npos);
    }
}

TEST(CloseGroup, RejectsNonPermutations) {
    EXPECT_THROW(close_group(3, {Permutation{0, 0, 1}}), DomainError);
    EXPECT_THROW(close_group(3, {Permutation{0, 1}}), DomainError);
}

TEST(OrbitPartition, Examples) {
    EXPECT_EQ(orbit_partition(close_group(5, {})).size(), 5U);
    EXPECT_EQ(orbit_partition(close_group(3, {swap_of(3, 0, 1)})), (std::vector<Orbit>{{0, 1}, {2}}));
    const std::vector<Permutation> gens{swap_of(4, 0, 1), swap_of(4, 2, 3)};
    EXPECT_EQ(as_sets(orbit_partition(close_group(4, gens))), oracle::orbits(4, gens));
}

TEST(OddFixedPoint, Examples) {
    EXPECT_EQ(odd_fixed_point(close_group(3, {swap_of(3, 0, 1)})), 2U);
    EXPECT_EQ(odd_fixed_point(close_group(1, {})), 0U);
    const std::vector<Permutation> gens{swap_of(5, 0, 1), swap_of(5, 2, 3)};
    EXPECT_EQ(odd_fixed_point(close_group(5, gens)), 4U);
    EXPECT_THROW(odd_fixed_point(close_group(4, {swap_of(4, 0, 1)})), PreconditionError);
}

TEST(QuotientAnalysis, FirstCoordinateLabels) {
    const TranslationPartition p(2, {0, 1, 0, 1});  // label = coordinate 0
    const auto r = quotient_analysis(p);
    ASSERT_TRUE(r.invariant);
    EXPECT_EQ(r.subspace_basis, (std::vector<std::uint32_t>{0b10}));
    EXPECT_EQ(r.class_count, 2U);
}

TEST(QuotientAnalysis, AllDistinct) {
    const auto r = quotient_analysis(TranslationPartition(2, {0, 1, 2, 3}));
    ASSERT_TRUE(r.invariant);
    EXPECT_TRUE(r.subspace_basis.empty());
    EXPECT_EQ(r.class_count, 4U);
}

TEST(QuotientAnalysis, EveryThreeClassPartitionRejected) {
    std::size_t seen = 0;
    for (std::uint32_t code = 0; code < 81; ++code) {
        std::vector<std::uint32_t> labels;
        for (std::uint32_t c = code, k = 0; k < 4; ++k, c /= 3) {
            labels.push_back(c % 3);
        }
        if (std::set<std::uint32_t>(labels.begin(), labels.end()).size() != 3) {
            continue;
        }
        ++seen;
        const TranslationPartition p(2, labels);
        const auto r = quotient_analysis(p);
        ASSERT_FALSE(r.invariant);
        ASSERT_TRUE(r.witness.has_value());
        const auto [q, q2, v] = *r.witness;
        EXPECT_EQ(p.label(q), p.label(q2));
        EXPECT_NE(p.label(q ^ v), p.label(q2 ^ v));
    }
    EXPECT_EQ(seen, 36U);
}

TEST(QuotientAnalysis, Validation) {
    EXPECT_THROW(TranslationPartition(2, {0, 1, 2}), DomainError);
    EXPECT_THROW(TranslationPartition(21, {}), DomainError);
}

// Properties -------------------------------------------------------------------

TEST(OrbitsProperty, TwoGroupsOnSmallSets) {
    Rng rng(61);
    for (int t = 0; t < 400; ++t) {
        const std::size_t n = 1 + uniform_index(rng, 7);
        std::vector<Permutation> gens;
        for (std::size_t k = 0, count = uniform_index(rng, 3); k < count; ++k) {
            // Random involution: disjoint transpositions on a shuffled prefix.
            auto points = identity_permutation(n);
            std::shuffle(points.begin(), points.end(), rng);
            auto g = identity_permutation(n);
            for (std::size_t j = 0, pairs = uniform_index(rng, n / 2 + 1); j < pairs; ++j) {
                std::swap(g[points[2 * j]], g[points[2 * j + 1]]);
            }
            gens.push_back(g);
        }
        try {
            const auto action = close_group(n, gens);
            const auto orbits = orbit_partition(action);
            EXPECT_EQ(as_sets(orbits), oracle::orbits(n, gens));
            for (const auto& o : orbits) {
                EXPECT_TRUE(std::has_single_bit(o.size()));
                EXPECT_EQ(action.order() % o.size(), 0U);
            }
            if (n % 2 == 1) {
                const auto x = odd_fixed_point(action);
                for (const auto& g : gens) {
                    EXPECT_EQ(g[x], x);
                }
            }
        } catch (const CertificateError&) {
            // Two involutions with a product of odd order > 1.
            ASSERT_EQ(gens.size(), 2U);
            EXPECT_FALSE(std::has_single_bit(permutation_order(compose_permutations(gens[0], gens[1]))));
        }
    }
}

TEST(OrbitsProperty, QuotientMatchesCubicCheck) {
    Rng rng(62);
    for (int t = 0; t < 2000; ++t) {
        const std::size_t d = uniform_index(rng, 5);
        const std::size_t size = std::size_t{1} << d;
        std::vector<std::uint32_t> labels(size);
        if (coin(rng)) {
            // Coset labelling of a random span.
            std::vector<std::uint32_t> span{0};
            for (int k = 0; k < 2; ++k) {
                const auto v = static_cast<std::uint32_t>(uniform_index(rng, size));
                const auto old = span.size();
                for (std::size_t j = 0; j < old; ++j) {
                    if (std::find(span.begin(), span.end(), span[j] ^ v) == span.end()) {
                        span.push_back(span[j] ^ v);
                    }
                }
            }
            for (std::uint32_t q = 0; q < size; ++q) {
                std::uint32_t least = q;
                for (auto w : span) {
                    least = std::min(least, q ^ w);
                }
                labels[q] = least + 100;
            }
        } else {
            for (auto& l : labels) {
                l = static_cast<std::uint32_t>(uniform_index(rng, 3));
            }
        }
        const TranslationPartition p(d, labels);
        const auto r = quotient_analysis(p);
        ASSERT_EQ(r.invariant, oracle::translation_invariant(labels));
        if (r.invariant) {
            const std::set<std::uint32_t> classes(labels.begin(), labels.end());
            EXPECT_EQ(r.class_count, classes.size());
            EXPECT_EQ(r.class_count, std::size_t{1} << (d - r.subspace_basis.size()));
        } else {
            ASSERT_TRUE(r.witness.has_value());
            EXPECT_EQ(p.label(r.witness->q), p.label(r.witness->q_prime));
            EXPECT_NE(p.label(r.witness->q ^ r.witness->v), p.label(r.witness->q_prime ^ r.witness->v));
        }
    }
}
