#pragma once

#include <set>
#include <vector>

#include "srrham/exactmath.hpp"
#include "srrham/lp.hpp"
#include "srrham/recovery.hpp"

namespace srrham {

struct Hyperedge {
    std::vector<Index> members;  // ascending, 1-based
    Index label = 0;             // data symbol, 1-based
};

/// Recovery hypergraph: one vertex per storage node, one labeled edge per recovery set.
class Hypergraph {
public:
    Hypergraph(std::size_t vertex_count, std::size_t label_count);

    /// Throws Error for an empty edge, out-of-range member or label, or a duplicate (members, label).
    void add_edge(std::vector<Index> members, Index label);

    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t label_count() const { return label_count_; }
    const std::vector<Hyperedge>& edges() const { return edges_; }

private:
    std::size_t vertex_count_;
    std::size_t label_count_;
    std::vector<Hyperedge> edges_;
    std::set<std::pair<std::vector<Index>, Index>> seen_;
};

Hypergraph from_recovery_system(const RecoverySystem& system);

/// Keeps only edges labeled by a symbol in `labels`.
Hypergraph partial_hypergraph(const Hypergraph& h, const std::set<Index>& labels);

struct MatchingResult {
    std::size_t value = 0;
    std::vector<std::size_t> edges;  // 0-based edge indices
};

struct TransversalResult {
    std::size_t value = 0;
    std::vector<Index> vertices;  // ascending, 1-based
};

struct FractionalMatchingResult {
    Rational value;
    std::vector<Rational> weights;  // per edge
};

/// Exact maximum matching by branch-and-bound.
MatchingResult matching_number(const Hypergraph& h);

/// Exact minimum transversal by branch-and-bound.
TransversalResult transversal_number(const Hypergraph& h);

/// LP optimum of max sum w(e) subject to per-vertex load <= 1.
FractionalMatchingResult fractional_matching_number(const Hypergraph& h, const SolveOptions& options = {});

bool is_matching(const Hypergraph& h, const std::vector<std::size_t>& edges);
bool is_transversal(const Hypergraph& h, const std::vector<Index>& vertices);
bool is_fractional_matching(const Hypergraph& h, const std::vector<Rational>& weights);

struct HypergraphStats {
    MatchingResult matching;
    TransversalResult transversal;
    FractionalMatchingResult fractional;

    std::size_t nu() const { return matching.value; }
    std::size_t tau() const { return transversal.value; }
    const Rational& mu_f() const { return fractional.value; }
    /// nu <= mu_f <= tau and every witness checks out.
    bool consistent(const Hypergraph& h) const;
};

HypergraphStats hypergraph_stats(const Hypergraph& h, const SolveOptions& options = {});

/// |I| + 2 - (|I| - 1) / (2^{r-1} - 1), the bound on sum_{i in I} lambda_i for systematic Ham(r, 2).
Rational uniformized_fractional_bound(std::size_t subset_size, std::size_t r);

}  // namespace srrham
