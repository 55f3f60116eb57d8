#include <algorithm>
#include <optional>

#include "srrham/srr.hpp"

namespace srrham {

// Phase 1 sends each symbol's demand to its systematic node. Phase 2 runs all
// symbols with unmet demand together: each symbol splits its demand equally over
// its least-loaded usable recovery sets, every such set receiving flow at rate 1.
// Node loads then grow linearly, so the allocation only needs re-planning when a
// symbol is exhausted, a node saturates, or two node load lines cross. Between
// those events the set loads (max over members) keep their order.
WaterfillResult waterfill(const SrrInstance& instance, const DemandVector& demand, std::uint64_t event_limit) {
    const LinearCode& code = instance.code;
    if (!code.is_systematic()) throw Error("waterfilling needs a systematic generator");
    if (demand.size() != instance.k()) throw Error("demand length differs from k");
    for (const auto& d : demand) {
        if (d < 0) throw Error("demand entries must be nonnegative");
    }
    const std::size_t n = instance.n();
    const std::size_t k = instance.k();
    const Rational& mu = instance.capacity;

    WaterfillResult out;
    out.residual = demand;
    std::vector<Rational> load(n + 1);

    for (Index i = 1; i <= k; ++i) {
        const Index node = (*code.systematic_positions)[i - 1];
        const auto& sets = instance.system.sets(i);
        const auto singleton = std::find(sets.begin(), sets.end(), RecoverySet({node}, n));
        if (singleton == sets.end()) throw Error("recovery system lacks the systematic singleton");
        const Rational room = mu - load[node];
        const Rational amount = std::min(out.residual[i - 1], room);
        if (amount <= 0) continue;
        out.allocation.add(i, static_cast<std::size_t>(singleton - sets.begin()), amount);
        load[node] += amount;
        out.residual[i - 1] -= amount;
    }

    auto set_load = [&](const RecoverySet& s) {
        Rational m = 0;
        for (Index v : s.members()) m = std::max(m, load[v]);
        return m;
    };

    std::vector<bool> stuck(k, false);
    while (true) {
        // tier[i] = indices of the least-loaded sets of symbol i with spare capacity
        std::vector<std::vector<std::size_t>> tier(k);
        std::vector<bool> relevant(n + 1, false);
        bool any = false;
        for (Index i = 1; i <= k; ++i) {
            if (stuck[i - 1] || out.residual[i - 1] == 0) continue;
            const auto& sets = instance.system.sets(i);
            std::optional<Rational> lowest;
            for (std::size_t s = 0; s < sets.size(); ++s) {
                const Rational l = set_load(sets[s]);
                if (l >= mu) continue;
                for (Index v : sets[s].members()) relevant[v] = true;
                if (!lowest || l < *lowest) {
                    lowest = l;
                    tier[i - 1].assign(1, s);
                } else if (l == *lowest) {
                    tier[i - 1].push_back(s);
                }
            }
            if (tier[i - 1].empty()) {
                stuck[i - 1] = true;
                continue;
            }
            any = true;
        }
        if (!any) break;
        if (++out.events > event_limit) {
            throw ResourceLimitError("waterfilling event limit of " + std::to_string(event_limit) + " exceeded");
        }

        std::vector<long> rate(n + 1, 0);
        for (Index i = 1; i <= k; ++i) {
            for (std::size_t s : tier[i - 1]) {
                for (Index v : instance.system.sets(i)[s].members()) ++rate[v];
            }
        }

        std::optional<Rational> step;
        auto consider = [&](Rational t) {
            if (!step || t < *step) step = std::move(t);
        };
        for (Index i = 1; i <= k; ++i) {
            if (!tier[i - 1].empty()) consider(out.residual[i - 1] / static_cast<long>(tier[i - 1].size()));
        }
        for (Index v = 1; v <= n; ++v) {
            if (rate[v] > 0) consider((mu - load[v]) / rate[v]);
        }
        for (Index u = 1; u <= n; ++u) {
            if (!relevant[u]) continue;
            for (Index w = 1; w <= n; ++w) {
                if (relevant[w] && rate[u] > rate[w] && load[u] < load[w]) {
                    consider((load[w] - load[u]) / (rate[u] - rate[w]));
                }
            }
        }

        const Rational t = *step;
        for (Index i = 1; i <= k; ++i) {
            for (std::size_t s : tier[i - 1]) out.allocation.add(i, s, t);
            out.residual[i - 1] -= t * static_cast<long>(tier[i - 1].size());
        }
        for (Index v = 1; v <= n; ++v) {
            if (rate[v] > 0) load[v] += t * rate[v];
        }
    }

    out.served.resize(k);
    for (std::size_t i = 0; i < k; ++i) out.served[i] = demand[i] - out.residual[i];
    return out;
}

}  // namespace srrham
