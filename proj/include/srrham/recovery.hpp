#pragma once

#include <map>
#include <optional>
#include <vector>

#include "srrham/codes.hpp"

namespace srrham {

/// Ascending, distinct, 1-based node indices.
class RecoverySet {
public:
    RecoverySet() = default;
    /// Sorts and validates; throws Error on empty, duplicate or out-of-range members.
    RecoverySet(std::vector<Index> members, std::size_t n);

    const std::vector<Index>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(Index node) const;
    bool is_subset_of(const RecoverySet& other) const;

    /// Canonical order: by size, then lexicographically.
    bool operator<(const RecoverySet& other) const;
    bool operator==(const RecoverySet&) const = default;

private:
    std::vector<Index> members_;
};

/// Minimum recovery sets of every data symbol. per_symbol[i-1] is R_i^min in canonical order.
struct RecoverySystem {
    std::vector<std::vector<RecoverySet>> per_symbol;
    std::size_t n = 0;
    std::optional<std::size_t> minimality_cap;

    std::size_t k() const { return per_symbol.size(); }
    const std::vector<RecoverySet>& sets(Index symbol) const { return per_symbol.at(symbol - 1); }
    std::size_t total_sets() const;
};

/// Singleton plus Supp(c) minus the systematic node, for dual words c that are 1 there.
std::vector<RecoverySet> recovery_sets_systematic(const LinearCode& code, Index symbol);

/// Exhaustive inclusion-minimal search over subsets of size <= cap.
std::vector<RecoverySet> recovery_sets_general(const LinearCode& code, Index symbol, std::size_t cap);

/// Systematic fast path when every symbol has a systematic column, else general
/// search with cap defaulting to n.
RecoverySystem build_recovery_system(const LinearCode& code, std::optional<std::size_t> cap = std::nullopt);

/// True when e_symbol lies in the span of the generator columns in `set`.
bool recovers(const LinearCode& code, Index symbol, const RecoverySet& set);

struct StructureReport {
    std::vector<std::size_t> non_singleton_count;        // per symbol
    std::map<std::size_t, std::size_t> cardinality_histogram;
    /// incidence[i-1][j-1] = number of sets of symbol i containing node j.
    std::vector<std::vector<std::size_t>> incidence;
    /// Non-singleton sets (over all symbols) with exactly t non-systematic nodes, t = 0..n-k.
    std::vector<std::size_t> by_nonsystematic_nodes;

    std::size_t expected_cardinality = 0;  // q^{r-1} - 1
    std::size_t expected_non_singleton = 0;  // q^{r-1}
    std::size_t expected_incidence = 0;  // (q-1) q^{r-2}

    bool cardinalities_ok = false;
    bool non_singleton_counts_ok = false;
    bool incidence_ok = false;
    bool all_ok() const { return cardinalities_ok && non_singleton_counts_ok && incidence_ok; }
};

StructureReport structure_report(const LinearCode& code, const RecoverySystem& system);

/// Non-singleton sets of all symbols that contain exactly t non-systematic nodes.
std::size_t count_by_nonsystematic_nodes(const LinearCode& code, const RecoverySystem& system, std::size_t t);

/// C(r,t) (2^{r-1} - t) for 1 <= t <= r; 0 for t = 0, where no such set exists.
std::uint64_t composition_count_formula(std::size_t r, std::size_t t);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace srrham
