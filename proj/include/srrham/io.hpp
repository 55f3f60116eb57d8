#pragma once

#include <string>

#include <json.hpp>

#include "srrham/hypergraph.hpp"
#include "srrham/recovery.hpp"
#include "srrham/srr.hpp"

namespace srrham {

using Json = nlohmann::ordered_json;

/// Code file: {q, r, n, k, generator, parity_check, systematic_positions | null}.
Json code_to_json(const LinearCode& code);
/// Re-validates the matrices; any malformed field throws Error.
LinearCode code_from_json(const Json& j);

/// {symbols: [{index, sets}]}, sets in canonical order.
Json recovery_to_json(const RecoverySystem& system);

Json stats_to_json(const HypergraphStats& stats);
Json allocation_to_json(const SrrInstance& instance, const Allocation& allocation);
Json report_to_json(const VerificationReport& report);

Json rational_list_json(const std::vector<Rational>& values);

/// Parses text as JSON, turning parse failures into Error.
Json parse_json(const std::string& text);

/// One CSV row per grid point: the axis values followed by the membership flag.
struct SliceSpec {
    std::vector<std::pair<Index, Rational>> fixed;
    std::vector<Index> axes;
    Rational max{3};
    Rational step{Rational(1, 4)};
};

std::string slice_csv(const SrrInstance& instance, const SliceSpec& spec);

}  // namespace srrham
