#include "srrham/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace srrham {

namespace {

using Mask = std::uint64_t;

Mask bit(Index v) { return Mask{1} << (v - 1); }

Mask to_mask(const std::vector<Index>& members) {
    Mask m = 0;
    for (Index v : members) m |= bit(v);
    return m;
}

// Inclusion-minimal distinct edge masks, ordered by (size, mask). `origin` maps each
// kept mask back to the lowest original edge index carrying it.
struct ReducedEdges {
    std::vector<Mask> masks;
    std::vector<std::size_t> origin;
};

ReducedEdges reduce_edges(const Hypergraph& h) {
    if (h.vertex_count() > 64) throw Error("exact hypergraph search supports at most 64 vertices");
    std::map<Mask, std::size_t> first;
    for (std::size_t e = 0; e < h.edges().size(); ++e) first.emplace(to_mask(h.edges()[e].members), e);
    std::vector<std::pair<Mask, std::size_t>> sorted(first.begin(), first.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        const int pa = std::popcount(a.first), pb = std::popcount(b.first);
        return pa != pb ? pa < pb : a.first < b.first;
    });
    ReducedEdges out;
    for (const auto& [mask, idx] : sorted) {
        const bool dominated = std::any_of(out.masks.begin(), out.masks.end(), [m = mask](Mask kept) { return (kept & m) == kept; });
        if (dominated) continue;
        out.masks.push_back(mask);
        out.origin.push_back(idx);
    }
    return out;
}

class MatchingSearch {
public:
    MatchingSearch(const ReducedEdges& edges, std::size_t n) : edges_(edges), n_(n) {}

    std::vector<std::size_t> run() {
        // greedy start: smallest edges first
        Mask used = 0;
        for (std::size_t e = 0; e < edges_.masks.size(); ++e) {
            if ((edges_.masks[e] & used) == 0) {
                used |= edges_.masks[e];
                best_.push_back(e);
            }
        }
        const Mask all = n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1;
        recurse(all);
        return best_;
    }

private:
    void recurse(Mask free) {
        std::vector<std::size_t> avail;
        for (std::size_t e = 0; e < edges_.masks.size(); ++e) {
            if ((edges_.masks[e] & ~free) == 0) avail.push_back(e);
        }
        if (avail.empty()) {
            if (current_.size() > best_.size()) best_ = current_;
            return;
        }
        // Each matched edge e spends 1/|e| on each of its vertices, so the matching
        // size is at most sum over coverable vertices of 1/(smallest edge through it).
        std::vector<int> min_size(n_, 0);
        std::vector<int> degree(n_, 0);
        for (std::size_t e : avail) {
            const int s = std::popcount(edges_.masks[e]);
            for (Mask m = edges_.masks[e]; m != 0; m &= m - 1) {
                const int v = std::countr_zero(m);
                if (min_size[v] == 0 || s < min_size[v]) min_size[v] = s;
                ++degree[v];
            }
        }
        Rational bound = 0;
        for (std::size_t v = 0; v < n_; ++v) {
            if (min_size[v] != 0) bound += Rational(1, min_size[v]);
        }
        if (Integer(current_.size()) + srrham::floor(bound) <= Integer(best_.size())) return;

        std::size_t pick = n_;
        for (std::size_t v = 0; v < n_; ++v) {
            if (degree[v] != 0 && (pick == n_ || degree[v] < degree[pick])) pick = v;
        }
        const Mask pick_bit = Mask{1} << pick;
        for (std::size_t e : avail) {
            if ((edges_.masks[e] & pick_bit) == 0) continue;
            current_.push_back(e);
            recurse(free & ~edges_.masks[e]);
            current_.pop_back();
        }
        recurse(free & ~pick_bit);
    }

    const ReducedEdges& edges_;
    std::size_t n_;
    std::vector<std::size_t> current_;
    std::vector<std::size_t> best_;
};

class TransversalSearch {
public:
    explicit TransversalSearch(const ReducedEdges& edges) : edges_(edges) {}

    Mask run() {
        // greedy start: repeatedly take the vertex hitting most uncovered edges
        Mask chosen = 0;
        while (true) {
            std::vector<int> hits(64, 0);
            bool any = false;
            for (Mask e : edges_.masks) {
                if (e & chosen) continue;
                any = true;
                for (Mask m = e; m != 0; m &= m - 1) ++hits[std::countr_zero(m)];
            }
            if (!any) break;
            const auto best = std::max_element(hits.begin(), hits.end()) - hits.begin();
            chosen |= Mask{1} << best;
        }
        best_ = chosen;
        recurse(0, 0);
        return best_;
    }

private:
    void recurse(Mask chosen, Mask forbidden) {
        // forced vertices: uncovered edges with a single allowed vertex
        bool changed = true;
        while (changed) {
            changed = false;
            for (Mask e : edges_.masks) {
                if (e & chosen) continue;
                const Mask allowed = e & ~forbidden;
                if (allowed == 0) return;
                if (std::popcount(allowed) == 1) {
                    chosen |= allowed;
                    changed = true;
                }
            }
        }
        if (std::popcount(chosen) >= std::popcount(best_)) return;

        // lower bound: disjoint uncovered edges each need their own vertex
        Mask packed = 0;
        int lower = 0;
        std::size_t branch_edge = edges_.masks.size();
        int branch_size = 65;
        for (std::size_t e = 0; e < edges_.masks.size(); ++e) {
            const Mask m = edges_.masks[e];
            if (m & chosen) continue;
            const int allowed = std::popcount(m & ~forbidden);
            if (allowed < branch_size) {
                branch_size = allowed;
                branch_edge = e;
            }
            if ((m & packed) == 0) {
                packed |= m;
                ++lower;
            }
        }
        if (branch_edge == edges_.masks.size()) {
            best_ = chosen;
            return;
        }
        if (std::popcount(chosen) + lower >= std::popcount(best_)) return;

        // include the i-th allowed vertex, excluding the earlier ones
        Mask excluded = forbidden;
        for (Mask m = edges_.masks[branch_edge] & ~forbidden; m != 0; m &= m - 1) {
            const Mask v = m & (~m + 1);
            recurse(chosen | v, excluded);
            excluded |= v;
        }
    }

    const ReducedEdges& edges_;
    Mask best_ = 0;
};

}  // namespace

Hypergraph::Hypergraph(std::size_t vertex_count, std::size_t label_count)
    : vertex_count_(vertex_count), label_count_(label_count) {}

void Hypergraph::add_edge(std::vector<Index> members, Index label) {
    std::sort(members.begin(), members.end());
    if (members.empty()) throw Error("hyperedge must be nonempty");
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) throw Error("hyperedge repeats a vertex");
    if (members.front() < 1 || members.back() > vertex_count_) throw Error("hyperedge vertex out of range");
    if (label < 1 || label > label_count_) throw Error("hyperedge label out of range");
    if (!seen_.emplace(members, label).second) throw Error("duplicate hyperedge");
    edges_.push_back({std::move(members), label});
}

Hypergraph from_recovery_system(const RecoverySystem& system) {
    Hypergraph h(system.n, system.k());
    for (Index i = 1; i <= system.k(); ++i) {
        for (const auto& set : system.sets(i)) h.add_edge(set.members(), i);
    }
    return h;
}

Hypergraph partial_hypergraph(const Hypergraph& h, const std::set<Index>& labels) {
    for (Index l : labels) {
        if (l < 1 || l > h.label_count()) throw Error("label " + std::to_string(l) + " out of range");
    }
    Hypergraph out(h.vertex_count(), h.label_count());
    for (const auto& e : h.edges()) {
        if (labels.count(e.label)) out.add_edge(e.members, e.label);
    }
    return out;
}

MatchingResult matching_number(const Hypergraph& h) {
    const ReducedEdges reduced = reduce_edges(h);
    MatchingSearch search(reduced, h.vertex_count());
    MatchingResult out;
    for (std::size_t e : search.run()) out.edges.push_back(reduced.origin[e]);
    std::sort(out.edges.begin(), out.edges.end());
    out.value = out.edges.size();
    return out;
}

TransversalResult transversal_number(const Hypergraph& h) {
    const ReducedEdges reduced = reduce_edges(h);
    TransversalResult out;
    if (reduced.masks.empty()) return out;
    const Mask best = TransversalSearch(reduced).run();
    for (Mask m = best; m != 0; m &= m - 1) out.vertices.push_back(static_cast<Index>(std::countr_zero(m)) + 1);
    out.value = out.vertices.size();
    return out;
}

FractionalMatchingResult fractional_matching_number(const Hypergraph& h, const SolveOptions& options) {
    const std::size_t m = h.edges().size();
    FractionalMatchingResult out;
    out.weights.assign(m, Rational(0));
    if (m == 0) return out;
    LpProblem lp;
    lp.num_vars = m;
    lp.objective.assign(m, Rational(1));
    for (Index v = 1; v <= h.vertex_count(); ++v) {
        LpConstraint row{std::vector<Rational>(m), Relation::less_equal, Rational(1)};
        bool used = false;
        for (std::size_t e = 0; e < m; ++e) {
            if (std::binary_search(h.edges()[e].members.begin(), h.edges()[e].members.end(), v)) {
                row.coefficients[e] = 1;
                used = true;
            }
        }
        if (used) lp.constraints.push_back(std::move(row));
    }
    const LpOutcome res = solve(lp, options);
    if (res.status != LpStatus::optimal) throw Error("fractional matching LP did not reach an optimum");
    out.value = res.value;
    out.weights = res.solution;
    return out;
}

bool is_matching(const Hypergraph& h, const std::vector<std::size_t>& edges) {
    Mask used = 0;
    for (std::size_t e : edges) {
        if (e >= h.edges().size()) return false;
        const Mask m = to_mask(h.edges()[e].members);
        if (m & used) return false;
        used |= m;
    }
    return true;
}

bool is_transversal(const Hypergraph& h, const std::vector<Index>& vertices) {
    for (const auto& e : h.edges()) {
        const bool hit = std::any_of(vertices.begin(), vertices.end(), [&](Index v) {
            return std::binary_search(e.members.begin(), e.members.end(), v);
        });
        if (!hit) return false;
    }
    return true;
}

bool is_fractional_matching(const Hypergraph& h, const std::vector<Rational>& weights) {
    if (weights.size() != h.edges().size()) return false;
    std::vector<Rational> load(h.vertex_count() + 1);
    for (std::size_t e = 0; e < weights.size(); ++e) {
        if (weights[e] < 0 || weights[e] > 1) return false;
        for (Index v : h.edges()[e].members) load[v] += weights[e];
    }
    return std::all_of(load.begin(), load.end(), [](const Rational& l) { return l <= 1; });
}

bool HypergraphStats::consistent(const Hypergraph& h) const {
    Rational total = 0;
    for (const auto& w : fractional.weights) total += w;
    return Rational(matching.value) <= fractional.value && fractional.value <= Rational(transversal.value) &&
           is_matching(h, matching.edges) && matching.edges.size() == matching.value &&
           is_transversal(h, transversal.vertices) && transversal.vertices.size() == transversal.value &&
           is_fractional_matching(h, fractional.weights) && total == fractional.value;
}

HypergraphStats hypergraph_stats(const Hypergraph& h, const SolveOptions& options) {
    return {matching_number(h), transversal_number(h), fractional_matching_number(h, options)};
}

Rational uniformized_fractional_bound(std::size_t subset_size, std::size_t r) {
    if (r < 2) throw Error("r must be at least 2");
    const Rational s(static_cast<long>(subset_size));
    return s + 2 - (s - 1) / Rational((std::int64_t{1} << (r - 1)) - 1);
}

}  // namespace srrham
