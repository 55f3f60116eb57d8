#include "srrham/recovery.hpp"

#include <algorithm>
#include <set>

namespace srrham {

namespace {

using Mask = std::uint64_t;

std::vector<std::uint32_t> unit_vector(std::size_t k, Index symbol) {
    std::vector<std::uint32_t> e(k, 0);
    e[symbol - 1] = 1;
    return e;
}

void check_symbol(const LinearCode& code, Index symbol) {
    if (symbol < 1 || symbol > code.k) {
        throw Error("symbol " + std::to_string(symbol) + " out of range 1.." + std::to_string(code.k));
    }
}

// Keeps only inclusion-minimal sets and returns them in canonical order.
std::vector<RecoverySet> minimal_sorted(std::vector<RecoverySet> sets) {
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<RecoverySet> out;
    for (const auto& s : sets) {
        const bool dominated = std::any_of(out.begin(), out.end(), [&](const RecoverySet& kept) { return kept.is_subset_of(s); });
        if (!dominated) out.push_back(s);
    }
    return out;
}

}  // namespace

RecoverySet::RecoverySet(std::vector<Index> members, std::size_t n) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (members_.empty()) throw Error("recovery set must be nonempty");
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) throw Error("recovery set has duplicate nodes");
    if (members_.front() < 1 || members_.back() > n) throw Error("recovery set node out of range 1.." + std::to_string(n));
}

bool RecoverySet::contains(Index node) const { return std::binary_search(members_.begin(), members_.end(), node); }

bool RecoverySet::is_subset_of(const RecoverySet& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

bool RecoverySet::operator<(const RecoverySet& other) const {
    if (members_.size() != other.members_.size()) return members_.size() < other.members_.size();
    return members_ < other.members_;
}

std::size_t RecoverySystem::total_sets() const {
    std::size_t total = 0;
    for (const auto& s : per_symbol) total += s.size();
    return total;
}

bool recovers(const LinearCode& code, Index symbol, const RecoverySet& set) {
    std::vector<std::size_t> cols;
    for (Index v : set.members()) cols.push_back(v - 1);
    const auto e = unit_vector(code.k, symbol);
    return in_span(code.generator.select_columns(cols), e).has_value();
}

std::vector<RecoverySet> recovery_sets_systematic(const LinearCode& code, Index symbol) {
    check_symbol(code, symbol);
    if (!code.is_systematic()) {
        throw Error("generator is not systematic; use recovery_sets_general");
    }
    const Index pos = (*code.systematic_positions)[symbol - 1];
    std::vector<RecoverySet> sets{RecoverySet({pos}, code.n)};
    for (const auto& c : codewords_with_unit_at(code, pos)) {
        std::vector<Index> members;
        for (Index v : c.support) {
            if (v != pos) members.push_back(v);
        }
        sets.emplace_back(std::move(members), code.n);
    }
    return minimal_sorted(std::move(sets));
}

std::vector<RecoverySet> recovery_sets_general(const LinearCode& code, Index symbol, std::size_t cap) {
    check_symbol(code, symbol);
    if (cap < 1) throw Error("recovery search cap must be at least 1");
    if (code.n > 64) throw Error("general recovery search supports at most 64 nodes");
    const std::size_t n = code.n;
    cap = std::min(cap, n);
    const auto e = unit_vector(code.k, symbol);

    std::vector<RecoverySet> found;
    std::vector<Mask> found_masks;
    std::vector<std::size_t> combo;
    for (std::size_t size = 1; size <= cap; ++size) {
        combo.resize(size);
        for (std::size_t i = 0; i < size; ++i) combo[i] = i;
        while (true) {
            Mask mask = 0;
            for (std::size_t c : combo) mask |= Mask{1} << c;
            const bool superset = std::any_of(found_masks.begin(), found_masks.end(), [&](Mask f) { return (f & mask) == f; });
            if (!superset && in_span(code.generator.select_columns(combo), e)) {
                std::vector<Index> members;
                for (std::size_t c : combo) members.push_back(c + 1);
                found.emplace_back(std::move(members), n);
                found_masks.push_back(mask);
            }
            // next combination in lexicographic order
            std::size_t i = size;
            while (i > 0 && combo[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++combo[i - 1];
            for (std::size_t j = i; j < size; ++j) combo[j] = combo[j - 1] + 1;
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

RecoverySystem build_recovery_system(const LinearCode& code, std::optional<std::size_t> cap) {
    RecoverySystem system;
    system.n = code.n;
    system.per_symbol.resize(code.k);
    if (code.is_systematic()) {
        for (Index i = 1; i <= code.k; ++i) system.per_symbol[i - 1] = recovery_sets_systematic(code, i);
        return system;
    }
    const std::size_t limit = cap.value_or(code.n);
    system.minimality_cap = limit;
    for (Index i = 1; i <= code.k; ++i) system.per_symbol[i - 1] = recovery_sets_general(code, i, limit);
    return system;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t out = 1;
    for (std::uint64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

std::uint64_t composition_count_formula(std::size_t r, std::size_t t) {
    if (t == 0 || t > r) return 0;
    return binomial(r, t) * ((std::uint64_t{1} << (r - 1)) - t);
}

StructureReport structure_report(const LinearCode& code, const RecoverySystem& system) {
    if (!code.is_systematic()) throw Error("structure report needs a systematic generator");
    if (system.k() != code.k || system.n != code.n) throw Error("recovery system does not match code");
    const auto& positions = *code.systematic_positions;
    const std::size_t qr1 = static_cast<std::size_t>(ipow(code.q, code.r - 1));

    StructureReport rep;
    rep.expected_cardinality = qr1 - 1;
    rep.expected_non_singleton = qr1;
    rep.expected_incidence = (code.q - 1) * static_cast<std::size_t>(ipow(code.q, code.r - 2));
    rep.non_singleton_count.assign(code.k, 0);
    rep.incidence.assign(code.k, std::vector<std::size_t>(code.n, 0));
    rep.by_nonsystematic_nodes.assign(code.r + 1, 0);

    const std::set<Index> systematic(positions.begin(), positions.end());
    rep.cardinalities_ok = true;
    rep.incidence_ok = true;
    for (Index i = 1; i <= code.k; ++i) {
        for (const auto& set : system.sets(i)) {
            ++rep.cardinality_histogram[set.size()];
            if (set.size() != 1 && set.size() != rep.expected_cardinality) rep.cardinalities_ok = false;
            for (Index v : set.members()) ++rep.incidence[i - 1][v - 1];
            if (set.size() > 1) {
                ++rep.non_singleton_count[i - 1];
                const auto t = static_cast<std::size_t>(
                    std::count_if(set.members().begin(), set.members().end(), [&](Index v) { return !systematic.count(v); }));
                if (t < rep.by_nonsystematic_nodes.size()) ++rep.by_nonsystematic_nodes[t];
            }
        }
        for (Index j = 1; j <= code.n; ++j) {
            if (j != positions[i - 1] && rep.incidence[i - 1][j - 1] != rep.expected_incidence) rep.incidence_ok = false;
        }
    }
    rep.non_singleton_counts_ok = std::all_of(rep.non_singleton_count.begin(), rep.non_singleton_count.end(),
                                              [&](std::size_t c) { return c == rep.expected_non_singleton; });
    return rep;
}

std::size_t count_by_nonsystematic_nodes(const LinearCode& code, const RecoverySystem& system, std::size_t t) {
    if (code.q != 2) throw Error("composition counts are defined for binary codes only");
    if (!code.is_systematic()) throw Error("composition counts need a systematic generator");
    if (t > code.r) throw Error("t must lie in 0..r");
    return structure_report(code, system).by_nonsystematic_nodes[t];
}

}  // namespace srrham
