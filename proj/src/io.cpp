#include "srrham/io.hpp"

#include <sstream>

namespace srrham {

namespace {

Json matrix_json(const FieldMatrix& m) {
    Json rows = Json::array();
    for (const auto& row : m.to_rows()) rows.push_back(row);
    return rows;
}

FieldMatrix matrix_from(const Json& j, const char* name, std::uint32_t q) {
    if (!j.is_array() || j.empty()) throw Error(std::string(name) + " must be a nonempty array of rows");
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& row : j) {
        if (!row.is_array()) throw Error(std::string(name) + " rows must be arrays");
        std::vector<std::int64_t> out;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw Error(std::string(name) + " entries must be integers");
            const auto x = v.get<std::int64_t>();
            if (x < 0 || x >= static_cast<std::int64_t>(q)) throw Error(std::string(name) + " entries must lie in [0, q)");
            out.push_back(x);
        }
        rows.push_back(std::move(out));
    }
    return FieldMatrix::from_rows(rows, q);
}

std::uint64_t field_uint(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) throw Error(std::string("code file needs a nonnegative integer \"") + key + "\"");
    return j[key].get<std::uint64_t>();
}

}  // namespace

Json code_to_json(const LinearCode& code) {
    Json j;
    j["q"] = code.q;
    j["r"] = code.r;
    j["n"] = code.n;
    j["k"] = code.k;
    j["generator"] = matrix_json(code.generator);
    j["parity_check"] = matrix_json(code.parity_check);
    j["systematic_positions"] = code.systematic_positions ? Json(*code.systematic_positions) : Json(nullptr);
    return j;
}

LinearCode code_from_json(const Json& j) {
    if (!j.is_object()) throw Error("code file must hold a JSON object");
    const auto q = field_uint(j, "q");
    if (q > 0xFFFF || !is_prime(static_cast<std::uint32_t>(q))) throw Error("q must be a prime");
    const auto r = field_uint(j, "r");
    const auto n = field_uint(j, "n");
    const auto k = field_uint(j, "k");
    if (!j.contains("generator")) throw Error("code file lacks \"generator\"");
    const FieldMatrix g = matrix_from(j["generator"], "generator", static_cast<std::uint32_t>(q));
    LinearCode code = j.contains("parity_check") && !j["parity_check"].is_null()
                          ? code_from_matrices(g, matrix_from(j["parity_check"], "parity_check", static_cast<std::uint32_t>(q)))
                          : import_generator(g.to_rows(), static_cast<std::uint32_t>(q));
    if (code.r != r || code.n != n || code.k != k) throw Error("declared q, r, n, k disagree with the matrices");
    if (j.contains("systematic_positions") && !j["systematic_positions"].is_null()) {
        const auto declared = j["systematic_positions"].get<std::vector<Index>>();
        if (!code.systematic_positions || *code.systematic_positions != declared) {
            throw Error("declared systematic_positions disagree with the generator");
        }
    }
    return code;
}

Json recovery_to_json(const RecoverySystem& system) {
    Json symbols = Json::array();
    for (Index i = 1; i <= system.k(); ++i) {
        Json sets = Json::array();
        for (const auto& s : system.sets(i)) sets.push_back(s.members());
        symbols.push_back({{"index", i}, {"sets", std::move(sets)}});
    }
    return {{"symbols", std::move(symbols)}};
}

Json rational_list_json(const std::vector<Rational>& values) {
    Json out = Json::array();
    for (const auto& v : values) out.push_back(to_string(v));
    return out;
}

Json stats_to_json(const HypergraphStats& stats) {
    Json matching = Json::array();
    for (std::size_t e : stats.matching.edges) matching.push_back(e + 1);
    return {{"nu", stats.nu()},
            {"tau", stats.tau()},
            {"mu_f", to_string(stats.mu_f())},
            {"matching_edges", std::move(matching)},
            {"transversal", stats.transversal.vertices},
            {"fractional_weights", rational_list_json(stats.fractional.weights)}};
}

Json allocation_to_json(const SrrInstance& instance, const Allocation& allocation) {
    Json out = Json::array();
    for (const auto& [key, w] : allocation.weights) {
        out.push_back({{"symbol", key.symbol},
                       {"set", instance.system.sets(key.symbol).at(key.set).members()},
                       {"rate", to_string(w)}});
    }
    return out;
}

Json report_to_json(const VerificationReport& report) {
    Json claims = Json::array();
    for (const auto& c : report.claims) {
        claims.push_back({{"claim", c.claim},
                          {"paper_anchor", c.anchor},
                          {"predicted", c.predicted},
                          {"computed", c.computed},
                          {"pass", c.pass}});
    }
    return {{"r", report.r},
            {"q", report.q},
            {"systematic", report.systematic},
            {"all_pass", report.all_pass()},
            {"claims", std::move(claims)},
            {"skipped", report.skipped},
            {"observations", report.observations}};
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(std::string("malformed JSON: ") + e.what());
    }
}

std::string slice_csv(const SrrInstance& instance, const SliceSpec& spec) {
    const std::size_t k = instance.k();
    if (spec.axes.empty() || spec.axes.size() > 3) throw Error("slice needs one to three axes");
    if (spec.step <= 0) throw Error("slice step must be positive");
    if (spec.max < 0) throw Error("slice max must be nonnegative");
    std::vector<bool> used(k + 1, false);
    DemandVector base(k);
    auto claim = [&](Index i) {
        if (i < 1 || i > k) throw Error("slice symbol " + std::to_string(i) + " out of range");
        if (used[i]) throw Error("slice symbol " + std::to_string(i) + " named twice");
        used[i] = true;
    };
    for (const auto& [i, v] : spec.fixed) {
        claim(i);
        if (v < 0) throw Error("fixed slice values must be nonnegative");
        base[i - 1] = v;
    }
    for (Index a : spec.axes) claim(a);

    const Integer steps_big = srrham::floor(spec.max / spec.step);
    if (steps_big > 1000) throw ResourceLimitError("slice grid exceeds 1000 steps per axis");
    const long steps = steps_big.convert_to<long>();

    std::ostringstream os;
    for (std::size_t a = 0; a < spec.axes.size(); ++a) os << "lambda_" << spec.axes[a] << ",";
    os << "member\n";
    std::vector<long> idx(spec.axes.size(), 0);
    while (true) {
        DemandVector d = base;
        for (std::size_t a = 0; a < spec.axes.size(); ++a) {
            d[spec.axes[a] - 1] = spec.step * idx[a];
            os << to_string(d[spec.axes[a] - 1]) << ",";
        }
        os << (membership(instance, d).member ? "true" : "false") << "\n";
        std::size_t a = spec.axes.size();
        while (a > 0 && idx[a - 1] == steps) idx[--a] = 0;
        if (a == 0) break;
        ++idx[a - 1];
    }
    return os.str();
}

}  // namespace srrham
