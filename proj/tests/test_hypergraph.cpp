#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>

#include "srrham/hypergraph.hpp"

using namespace srrham;

namespace {

std::uint32_t mask_of(const std::vector<Index>& m) {
    std::uint32_t out = 0;
    for (Index v : m) out |= 1u << (v - 1);
    return out;
}

// Exhaustive oracles: smallest hitting vertex set, largest pairwise-disjoint edge set.
std::size_t brute_tau(const Hypergraph& h) {
    std::size_t best = h.vertex_count();
    for (std::uint32_t s = 0; s < (1u << h.vertex_count()); ++s) {
        bool hits = true;
        for (const auto& e : h.edges()) hits = hits && (mask_of(e.members) & s) != 0;
        if (hits) best = std::min<std::size_t>(best, std::popcount(s));
    }
    return best;
}

std::size_t brute_nu(const Hypergraph& h, std::size_t from = 0, std::uint32_t used = 0) {
    std::size_t best = 0;
    for (std::size_t e = from; e < h.edges().size(); ++e) {
        const std::uint32_t m = mask_of(h.edges()[e].members);
        if (m & used) continue;
        best = std::max(best, 1 + brute_nu(h, e + 1, used | m));
    }
    return best;
}

const std::vector<std::vector<std::int64_t>> kNonSystematicG{
    {1, 1, 0, 0, 1, 1, 0}, {0, 0, 1, 0, 1, 1, 0}, {1, 0, 1, 0, 1, 0, 1}, {0, 1, 1, 1, 1, 0, 0}};

}  // namespace

TEST_CASE("edge validation") {
    Hypergraph h(4, 2);
    h.add_edge({2, 1}, 1);
    CHECK(h.edges()[0].members == std::vector<Index>{1, 2});
    CHECK_THROWS_AS(h.add_edge({1, 2}, 1), Error);
    CHECK_NOTHROW(h.add_edge({1, 2}, 2));
    CHECK_THROWS_AS(h.add_edge({}, 1), Error);
    CHECK_THROWS_AS(h.add_edge({5}, 1), Error);
    CHECK_THROWS_AS(h.add_edge({1}, 3), Error);
    CHECK_THROWS_AS(h.add_edge({1, 1}, 1), Error);
    CHECK_THROWS_AS(partial_hypergraph(h, {3}), Error);
    CHECK(partial_hypergraph(h, {2}).edges().size() == 1);
}

TEST_CASE("small graphs") {
    // a triangle: nu = 1, tau = 2, mu_f = 3/2
    Hypergraph tri(3, 1);
    tri.add_edge({1, 2}, 1);
    tri.add_edge({2, 3}, 1);
    tri.add_edge({1, 3}, 1);
    const HypergraphStats s = hypergraph_stats(tri);
    CHECK(s.nu() == 1);
    CHECK(s.tau() == 2);
    CHECK(s.mu_f() == Rational(3, 2));
    CHECK(s.consistent(tri));

    Hypergraph empty(3, 1);
    CHECK(matching_number(empty).value == 0);
    CHECK(transversal_number(empty).value == 0);
    CHECK(fractional_matching_number(empty).value == 0);
}

TEST_CASE("random hypergraphs against exhaustive search") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 3 + rng() % 8;
        Hypergraph h(n, 2);
        const std::size_t m = 1 + rng() % 12;
        for (std::size_t e = 0; e < m; ++e) {
            std::vector<Index> members;
            for (Index v = 1; v <= n; ++v) {
                if (rng() % 3 == 0) members.push_back(v);
            }
            if (members.empty()) members.push_back(1 + rng() % n);
            try {
                h.add_edge(members, 1 + rng() % 2);
            } catch (const Error&) {
            }
        }
        const HypergraphStats s = hypergraph_stats(h);
        CHECK(s.nu() == brute_nu(h));
        CHECK(s.tau() == brute_tau(h));
        CHECK(s.consistent(h));
    }
}

TEST_CASE("systematic binary recovery hypergraphs") {
    for (const auto [r, expected] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 5}, {4, 11}}) {
        const Hypergraph h = from_recovery_system(build_recovery_system(systematic_hamming(r, 2)));
        const HypergraphStats s = hypergraph_stats(h);
        CHECK(s.nu() == expected);
        CHECK(s.tau() == expected);
        CHECK(s.mu_f() == Rational(static_cast<long>(expected)));
        CHECK(s.consistent(h));
    }
    const Hypergraph h3 = from_recovery_system(build_recovery_system(natural_hamming(3, 2)));
    CHECK(brute_tau(h3) == 5);
}

TEST_CASE("non-systematic example hypergraph") {
    const Hypergraph h = from_recovery_system(build_recovery_system(import_generator(kNonSystematicG, 2)));
    CHECK(h.edges().size() == 24);
    const HypergraphStats s = hypergraph_stats(h);
    CHECK(s.nu() == 3);
    CHECK(s.tau() == 3);
    CHECK(s.mu_f() == 3);
    CHECK(is_transversal(h, {3, 4, 7}));
    CHECK_FALSE(is_transversal(h, {3, 4}));
}

TEST_CASE("witness checkers") {
    Hypergraph h(4, 1);
    h.add_edge({1, 2}, 1);
    h.add_edge({2, 3}, 1);
    h.add_edge({3, 4}, 1);
    CHECK(is_matching(h, {0, 2}));
    CHECK_FALSE(is_matching(h, {0, 1}));
    CHECK_FALSE(is_matching(h, {5}));
    CHECK(is_fractional_matching(h, {Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
    CHECK_FALSE(is_fractional_matching(h, {1, 1, 0}));
    CHECK_FALSE(is_fractional_matching(h, {1, 0}));
}

TEST_CASE("uniformized bound") {
    CHECK(uniformized_fractional_bound(1, 3) == 3);
    CHECK(uniformized_fractional_bound(2, 3) == Rational(11, 3));
    CHECK(uniformized_fractional_bound(3, 4) == Rational(33, 7));
    CHECK_THROWS_AS(uniformized_fractional_bound(2, 1), Error);
}
