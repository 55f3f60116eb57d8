#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "srrham/codes.hpp"
#include "srrham/hypergraph.hpp"
#include "srrham/lp.hpp"
#include "srrham/recovery.hpp"

namespace srrham {

/// A code, its minimum recovery system and the uniform per-node capacity mu.
struct SrrInstance {
    LinearCode code;
    RecoverySystem system;
    Rational capacity{1};
    SolveOptions lp_options;

    /// Builds the recovery system; throws Error when capacity <= 0.
    static SrrInstance make(LinearCode code, Rational capacity = Rational(1),
                            std::optional<std::size_t> recovery_cap = std::nullopt);

    std::size_t k() const { return code.k; }
    std::size_t n() const { return code.n; }
};

using DemandVector = std::vector<Rational>;

/// Demand routed to recovery set `set` (index into system.sets(symbol)) of `symbol`.
struct AllocationKey {
    Index symbol = 0;
    std::size_t set = 0;
    auto operator<=>(const AllocationKey&) const = default;
};

/// Sparse lambda_{iR}: only strictly positive entries are stored.
struct Allocation {
    std::map<AllocationKey, Rational> weights;

    void add(Index symbol, std::size_t set, const Rational& amount);
};

/// Result of an independent re-check of an allocation against the demand and capacity rows.
struct AllocationCheck {
    bool valid = false;
    std::string reason;
};

AllocationCheck validate_allocation(const SrrInstance& instance, const DemandVector& demand, const Allocation& allocation);

/// Per-node load, index v-1 for node v.
std::vector<Rational> node_loads(const SrrInstance& instance, const Allocation& allocation);

/// Per-symbol totals of an allocation.
DemandVector served_demand(const SrrInstance& instance, const Allocation& allocation);

struct MembershipResult {
    bool member = false;
    std::optional<Allocation> allocation;
};

MembershipResult membership(const SrrInstance& instance, const DemandVector& demand);

struct ObjectiveResult {
    Rational value;
    DemandVector demand;
    Allocation allocation;
};

/// max sum_i weights_i lambda_i over the service rate region.
ObjectiveResult max_objective(const SrrInstance& instance, const std::vector<Rational>& weights);

Rational lambda_star(const SrrInstance& instance, Index symbol);
std::vector<Rational> lambda_star_vector(const SrrInstance& instance);
/// min_i lambda_i^*.
Rational delta_simplex(const SrrInstance& instance);

struct SubsetBound {
    std::vector<Index> subset;
    std::vector<std::uint32_t> column_sum;  // sum of parity-check columns at the systematic nodes of I
    Rational predicted;                     // |I| if column_sum = 0, else |I| + 1
    Rational computed;                      // exact max of sum_{i in I} lambda_i
    bool matches() const { return predicted == computed; }
};

SubsetBound subset_bound(const SrrInstance& instance, const std::set<Index>& subset);

/// Parity-check column sum over the systematic nodes of `subset`; binary systematic codes only.
std::vector<std::uint32_t> systematic_column_sum(const LinearCode& code, const std::set<Index>& subset);

/// One inequality sum_{i in I} lambda_i <= bound of the closed-form description of
/// the region of a systematic binary Hamming code, with its LP tightness check.
struct CharacterizationRow {
    std::vector<Index> subset;
    Rational bound;     // predicted right-hand side
    Rational computed;  // exact LP max of sum_{i in I} lambda_i
    bool tight() const { return bound == computed; }
};

/// Predicted right-hand side for sum_{i in I} lambda_i on systematic Ham(r, 2):
/// 3 for |I| <= 2, the subset rule for 2 < |I| < k, and 5 or k for I = [k].
Rational predicted_subset_bound(const LinearCode& code, const std::set<Index>& subset);

/// Every nonempty subset of [k]; intended for k <= 4 (throws above 10).
std::vector<CharacterizationRow> characterization_rows(const SrrInstance& instance);

/// True when demand satisfies every row's predicted bound and is nonnegative.
bool satisfies_rows(const std::vector<CharacterizationRow>& rows, const DemandVector& demand);

inline constexpr std::uint64_t kDefaultWaterfillEventLimit = 1'000'000;

struct WaterfillResult {
    Allocation allocation;
    DemandVector served;
    DemandVector residual;
    std::uint64_t events = 0;
};

/// Systematic servers first, then the least-loaded recovery sets (load of a set =
/// max load of its nodes), split uniformly and advanced by exact fill events.
WaterfillResult waterfill(const SrrInstance& instance, const DemandVector& demand,
                          std::uint64_t event_limit = kDefaultWaterfillEventLimit);

/// Number of unordered triples of data symbols whose parity columns sum to zero, closed form.
std::uint64_t m3_closed_form(std::size_t r);
/// Same count by enumerating pairs of weight >= 2 vectors of GF(2)^r.
std::uint64_t m3_brute(std::size_t r);

/// Hypergraph of the instance's recovery system.
Hypergraph recovery_hypergraph(const SrrInstance& instance);

struct ClaimResult {
    std::string claim;
    std::string anchor;
    std::string predicted;
    std::string computed;
    bool pass = false;
};

struct VerificationReport {
    std::size_t r = 0;
    std::uint32_t q = 0;
    bool systematic = false;
    std::vector<ClaimResult> claims;
    std::vector<std::string> skipped;
    /// Measured quantities without a pass/fail prediction.
    std::vector<std::string> observations;

    bool all_pass() const;
};

struct VerifyOptions {
    /// Subsets of size >= 4 sampled for the subset theorem.
    std::size_t sampled_large_subsets = 20;
    /// Above this many triples, a deterministic sample of this size is checked instead.
    std::size_t max_triples = 400;
    std::uint64_t seed = 20250101;
};

VerificationReport verify_report(const LinearCode& code, const VerifyOptions& options = {});

}  // namespace srrham
