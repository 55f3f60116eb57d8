#include "srrham/srr.hpp"

#include <algorithm>
#include <bit>

namespace srrham {

namespace {

struct Variable {
    Index symbol;
    std::size_t set;
};

void check_length(const SrrInstance& instance, std::size_t size, const char* what) {
    if (size != instance.k()) {
        throw Error(std::string(what) + " has " + std::to_string(size) + " entries, expected k = " +
                    std::to_string(instance.k()));
    }
}

// One variable per (symbol, recovery set) for the selected symbols, plus one
// capacity row per node touched by those variables.
struct AllocationLp {
    LpProblem problem;
    std::vector<Variable> vars;
};

AllocationLp allocation_lp(const SrrInstance& instance, const std::vector<bool>& symbols) {
    AllocationLp out;
    for (Index i = 1; i <= instance.k(); ++i) {
        if (!symbols[i - 1]) continue;
        for (std::size_t s = 0; s < instance.system.sets(i).size(); ++s) out.vars.push_back({i, s});
    }
    const std::size_t m = out.vars.size();
    out.problem.num_vars = m;
    out.problem.objective.assign(m, Rational(0));
    std::vector<std::vector<std::size_t>> by_node(instance.n() + 1);
    for (std::size_t x = 0; x < m; ++x) {
        for (Index v : instance.system.sets(out.vars[x].symbol)[out.vars[x].set].members()) by_node[v].push_back(x);
    }
    for (Index v = 1; v <= instance.n(); ++v) {
        if (by_node[v].empty()) continue;
        LpConstraint row{std::vector<Rational>(m), Relation::less_equal, instance.capacity};
        for (std::size_t x : by_node[v]) row.coefficients[x] = 1;
        out.problem.constraints.push_back(std::move(row));
    }
    return out;
}

Allocation allocation_from(const std::vector<Variable>& vars, const std::vector<Rational>& x) {
    Allocation a;
    for (std::size_t j = 0; j < vars.size(); ++j) a.add(vars[j].symbol, vars[j].set, x[j]);
    return a;
}

}  // namespace

SrrInstance SrrInstance::make(LinearCode code, Rational capacity, std::optional<std::size_t> recovery_cap) {
    if (capacity <= 0) throw Error("capacity must be positive");
    SrrInstance inst;
    inst.system = build_recovery_system(code, recovery_cap);
    inst.code = std::move(code);
    inst.capacity = std::move(capacity);
    return inst;
}

void Allocation::add(Index symbol, std::size_t set, const Rational& amount) {
    if (amount == 0) return;
    if (amount < 0) throw Error("allocation weights must be nonnegative");
    weights[{symbol, set}] += amount;
}

std::vector<Rational> node_loads(const SrrInstance& instance, const Allocation& allocation) {
    std::vector<Rational> load(instance.n());
    for (const auto& [key, w] : allocation.weights) {
        for (Index v : instance.system.sets(key.symbol).at(key.set).members()) load[v - 1] += w;
    }
    return load;
}

DemandVector served_demand(const SrrInstance& instance, const Allocation& allocation) {
    DemandVector out(instance.k());
    for (const auto& [key, w] : allocation.weights) out.at(key.symbol - 1) += w;
    return out;
}

AllocationCheck validate_allocation(const SrrInstance& instance, const DemandVector& demand, const Allocation& allocation) {
    if (demand.size() != instance.k()) return {false, "demand length differs from k"};
    for (const auto& [key, w] : allocation.weights) {
        if (key.symbol < 1 || key.symbol > instance.k()) return {false, "allocation names an unknown symbol"};
        if (key.set >= instance.system.sets(key.symbol).size()) return {false, "allocation names an unknown recovery set"};
        if (w < 0) return {false, "negative allocation weight"};
    }
    const DemandVector served = served_demand(instance, allocation);
    for (std::size_t i = 0; i < demand.size(); ++i) {
        if (served[i] != demand[i]) {
            return {false, "symbol " + std::to_string(i + 1) + " receives " + to_string(served[i]) + " instead of " +
                               to_string(demand[i])};
        }
    }
    const auto load = node_loads(instance, allocation);
    for (std::size_t v = 0; v < load.size(); ++v) {
        if (load[v] > instance.capacity) {
            return {false, "node " + std::to_string(v + 1) + " carries " + to_string(load[v]) + " above capacity"};
        }
    }
    return {true, ""};
}

MembershipResult membership(const SrrInstance& instance, const DemandVector& demand) {
    check_length(instance, demand.size(), "demand");
    std::vector<bool> active(instance.k());
    for (std::size_t i = 0; i < demand.size(); ++i) {
        if (demand[i] < 0) throw Error("demand entries must be nonnegative");
        active[i] = demand[i] > 0;
    }
    AllocationLp lp = allocation_lp(instance, active);
    for (Index i = 1; i <= instance.k(); ++i) {
        if (!active[i - 1]) continue;
        LpConstraint row{std::vector<Rational>(lp.problem.num_vars), Relation::equal, demand[i - 1]};
        for (std::size_t x = 0; x < lp.vars.size(); ++x) {
            if (lp.vars[x].symbol == i) row.coefficients[x] = 1;
        }
        lp.problem.constraints.push_back(std::move(row));
    }
    const Feasibility f = check_feasible(lp.problem, instance.lp_options);
    if (!f.feasible) return {false, std::nullopt};
    Allocation a = allocation_from(lp.vars, *f.point);
    const AllocationCheck check = validate_allocation(instance, demand, a);
    if (!check.valid) throw Error("internal: membership witness failed validation: " + check.reason);
    return {true, std::move(a)};
}

ObjectiveResult max_objective(const SrrInstance& instance, const std::vector<Rational>& weights) {
    check_length(instance, weights.size(), "weight vector");
    if (std::all_of(weights.begin(), weights.end(), [](const Rational& w) { return w == 0; })) {
        throw Error("objective weights are all zero");
    }
    std::vector<bool> active(instance.k());
    for (std::size_t i = 0; i < weights.size(); ++i) active[i] = weights[i] > 0;
    AllocationLp lp = allocation_lp(instance, active);
    for (std::size_t x = 0; x < lp.vars.size(); ++x) lp.problem.objective[x] = weights[lp.vars[x].symbol - 1];

    ObjectiveResult out;
    out.value = 0;
    out.demand.assign(instance.k(), Rational(0));
    if (lp.vars.empty()) return out;
    const LpOutcome res = solve(lp.problem, instance.lp_options);
    if (res.status != LpStatus::optimal) throw Error("service rate objective LP did not reach an optimum");
    out.value = res.value;
    out.allocation = allocation_from(lp.vars, res.solution);
    out.demand = served_demand(instance, out.allocation);
    const AllocationCheck check = validate_allocation(instance, out.demand, out.allocation);
    if (!check.valid) throw Error("internal: objective witness failed validation: " + check.reason);
    return out;
}

Rational lambda_star(const SrrInstance& instance, Index symbol) {
    if (symbol < 1 || symbol > instance.k()) throw Error("symbol " + std::to_string(symbol) + " out of range");
    std::vector<Rational> w(instance.k());
    w[symbol - 1] = 1;
    return max_objective(instance, w).value;
}

std::vector<Rational> lambda_star_vector(const SrrInstance& instance) {
    std::vector<Rational> out;
    for (Index i = 1; i <= instance.k(); ++i) out.push_back(lambda_star(instance, i));
    return out;
}

Rational delta_simplex(const SrrInstance& instance) {
    const auto stars = lambda_star_vector(instance);
    return *std::min_element(stars.begin(), stars.end());
}

std::vector<std::uint32_t> systematic_column_sum(const LinearCode& code, const std::set<Index>& subset) {
    if (code.q != 2) throw Error("subset bounds are stated for binary codes only");
    if (!code.is_systematic()) throw Error("subset bounds need a systematic generator");
    std::vector<std::uint32_t> sum(code.r, 0);
    for (Index i : subset) {
        if (i < 1 || i > code.k) throw Error("symbol " + std::to_string(i) + " out of range");
        const auto col = code.parity_column((*code.systematic_positions)[i - 1]);
        for (std::size_t j = 0; j < code.r; ++j) sum[j] ^= col[j];
    }
    return sum;
}

SubsetBound subset_bound(const SrrInstance& instance, const std::set<Index>& subset) {
    if (subset.size() < 2 || subset.size() > instance.k()) throw Error("subset size must lie in 2..k");
    SubsetBound out;
    out.subset.assign(subset.begin(), subset.end());
    out.column_sum = systematic_column_sum(instance.code, subset);
    const bool zero = std::all_of(out.column_sum.begin(), out.column_sum.end(), [](std::uint32_t v) { return v == 0; });
    out.predicted = Rational(static_cast<long>(subset.size() + (zero ? 0 : 1)));
    std::vector<Rational> w(instance.k());
    for (Index i : subset) w[i - 1] = 1;
    out.computed = max_objective(instance, w).value;
    return out;
}

std::uint64_t m3_closed_form(std::size_t r) {
    if (r < 3) throw Error("M3 is defined for r >= 3");
    if (r > 20) throw Error("r too large");
    const std::uint64_t k = (std::uint64_t{1} << r) - 1 - r;
    const std::uint64_t numer = binomial(k, 2) + r * r - r * (std::uint64_t{1} << (r - 1));
    return numer / 3;
}

std::uint64_t m3_brute(std::size_t r) {
    if (r < 3) throw Error("M3 is defined for r >= 3");
    if (r > 16) throw Error("r too large for brute force");
    std::vector<std::uint32_t> heavy;
    for (std::uint32_t v = 1; v < (1u << r); ++v) {
        if (std::popcount(v) >= 2) heavy.push_back(v);
    }
    std::uint64_t pairs = 0;
    for (std::size_t a = 0; a < heavy.size(); ++a) {
        for (std::size_t b = a + 1; b < heavy.size(); ++b) pairs += std::popcount(heavy[a] ^ heavy[b]) >= 2;
    }
    return pairs / 3;
}

Hypergraph recovery_hypergraph(const SrrInstance& instance) { return from_recovery_system(instance.system); }

bool VerificationReport::all_pass() const {
    return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.pass; });
}

}  // namespace srrham
