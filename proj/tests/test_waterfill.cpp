#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "srrham/srr.hpp"

using namespace srrham;

namespace {

const std::vector<std::vector<std::int64_t>> kNonSystematicG{
    {1, 1, 0, 0, 1, 1, 0}, {0, 0, 1, 0, 1, 1, 0}, {1, 0, 1, 0, 1, 0, 1}, {0, 1, 1, 1, 1, 0, 0}};

}  // namespace

TEST_CASE("single symbol at its maximum fills every node") {
    for (std::size_t r : {3u, 4u, 5u}) {
        const SrrInstance inst = SrrInstance::make(systematic_hamming(r, 2));
        const Rational share(1, 1L << (r - 2));
        for (Index i : {Index{1}, inst.k()}) {
            DemandVector d(inst.k());
            d[i - 1] = 3;
            const WaterfillResult wf = waterfill(inst, d);
            CHECK(wf.residual[i - 1] == 0);
            CHECK(validate_allocation(inst, d, wf.allocation).valid);
            for (const auto& l : node_loads(inst, wf.allocation)) CHECK(l == 1);
            for (const auto& [key, w] : wf.allocation.weights) {
                CHECK(key.symbol == i);
                CHECK(w == (inst.system.sets(i)[key.set].size() == 1 ? Rational(1) : share));
            }
            CHECK(wf.allocation.weights.size() == 1 + (std::size_t{1} << (r - 1)));
            CHECK(max_objective(inst, [&] { std::vector<Rational> w(inst.k()); w[i - 1] = 1; return w; }()).value ==
                  wf.served[i - 1]);
        }
    }
    const SrrInstance t = SrrInstance::make(systematic_hamming(3, 3));
    for (Index i = 1; i <= t.k(); ++i) {
        DemandVector d(t.k());
        d[i - 1] = Rational(5, 2);
        const WaterfillResult wf = waterfill(t, d);
        CHECK(wf.residual[i - 1] == 0);
        for (const auto& l : node_loads(t, wf.allocation)) CHECK(l == 1);
    }
}

TEST_CASE("excess demand is returned as residual") {
    const SrrInstance inst = SrrInstance::make(natural_hamming(3, 2));
    const WaterfillResult wf = waterfill(inst, {4, 0, 0, 0});
    CHECK(wf.served == DemandVector{3, 0, 0, 0});
    CHECK(wf.residual == DemandVector{1, 0, 0, 0});
    CHECK_FALSE(membership(inst, {4, 0, 0, 0}).member);
    CHECK(validate_allocation(inst, wf.served, wf.allocation).valid);
}

TEST_CASE("uniform demand uses the systematic nodes only") {
    for (const LinearCode& code : {natural_hamming(3, 2), systematic_hamming(4, 2), systematic_hamming(3, 3)}) {
        const SrrInstance inst = SrrInstance::make(code);
        const DemandVector ones(inst.k(), Rational(1));
        const WaterfillResult wf = waterfill(inst, ones);
        CHECK(wf.served == ones);
        for (const auto& [key, w] : wf.allocation.weights) CHECK(inst.system.sets(key.symbol)[key.set].size() == 1);
        const auto loads = node_loads(inst, wf.allocation);
        for (Index v = 1; v <= inst.n(); ++v) {
            const auto& pos = *code.systematic_positions;
            CHECK(loads[v - 1] == (std::find(pos.begin(), pos.end(), v) != pos.end() ? 1 : 0));
        }
    }
}

TEST_CASE("random demands give valid allocations") {
    std::mt19937_64 rng(29);
    for (const LinearCode& code : {natural_hamming(3, 2), systematic_hamming(4, 2)}) {
        const SrrInstance inst = SrrInstance::make(code);
        for (int t = 0; t < 40; ++t) {
            DemandVector d(inst.k());
            for (auto& x : d) x = Rational(static_cast<long>(rng() % 9), 4);
            const WaterfillResult wf = waterfill(inst, d);
            CHECK(validate_allocation(inst, wf.served, wf.allocation).valid);
            for (std::size_t i = 0; i < d.size(); ++i) {
                CHECK(wf.served[i] + wf.residual[i] == d[i]);
                CHECK(wf.residual[i] >= 0);
            }
            // the served part never exceeds what the region allows
            CHECK(membership(inst, wf.served).member);
        }
    }
}

TEST_CASE("deterministic output") {
    const SrrInstance inst = SrrInstance::make(systematic_hamming(4, 2));
    DemandVector d(11, Rational(1, 3));
    d[0] = 2;
    d[5] = Rational(3, 2);
    const WaterfillResult a = waterfill(inst, d);
    const WaterfillResult b = waterfill(inst, d);
    CHECK(a.allocation.weights == b.allocation.weights);
    CHECK(a.events == b.events);
}

TEST_CASE("errors and limits") {
    const SrrInstance ns = SrrInstance::make(import_generator(kNonSystematicG, 2));
    CHECK_THROWS_AS(waterfill(ns, {1, 1, 1, 1}), Error);
    const SrrInstance inst = SrrInstance::make(natural_hamming(3, 2));
    CHECK_THROWS_AS(waterfill(inst, {1, 1}), Error);
    CHECK_THROWS_AS(waterfill(inst, {-1, 0, 0, 0}), Error);
    CHECK_THROWS_AS(waterfill(inst, {3, 0, 0, 0}, 0), ResourceLimitError);
}
