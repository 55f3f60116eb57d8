#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "srrham/io.hpp"

namespace srrham::cli {

namespace {

struct Options {
    std::string code_path;
    std::optional<std::size_t> r;
    std::optional<std::uint32_t> q;
    std::string layout = "standard";
    bool systematic = false;
    std::string capacity = "1";
    std::string out_path;
    std::string demand;
    std::string weights;
    std::string subset;
    std::optional<Index> symbol;
    std::optional<std::size_t> cap;
    std::string symbols;
    bool rows = false;
    std::vector<std::string> fix;
    std::string axes;
    std::string max = "3";
    std::string step = "1/4";
    std::string import_path;
    std::uint64_t event_limit = kDefaultWaterfillEventLimit;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LinearCode generated_code(const Options& o) {
    if (!o.r || !o.q) throw Error("give a code file or both -r and -q");
    if (o.layout == "standard") return systematic_hamming(*o.r, *o.q);
    if (o.layout == "natural") return natural_hamming(*o.r, *o.q);
    throw Error("layout must be standard or natural");
}

LinearCode load_code(const Options& o) {
    if (!o.code_path.empty()) {
        if (o.r || o.q) throw Error("give either a code file or -r/-q, not both");
        return code_from_json(parse_json(read_file(o.code_path)));
    }
    return generated_code(o);
}

SolveOptions lp_options() {
    SolveOptions opt;
    if (const char* env = std::getenv("SRRHAM_PIVOT_LIMIT")) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used != std::string(env).size() || v == 0) throw std::invalid_argument("");
            opt.pivot_limit = v;
        } catch (const std::exception&) {
            throw Error("SRRHAM_PIVOT_LIMIT must be a positive integer");
        }
    }
    return opt;
}

SrrInstance load_instance(const Options& o) {
    SrrInstance inst = SrrInstance::make(load_code(o), parse_rational(o.capacity), o.cap);
    inst.lp_options = lp_options();
    return inst;
}

// Symbols may be given as 1-based numbers or as letters a, b, c, ...
Index parse_symbol(const std::string& text) {
    if (text.size() == 1 && text[0] >= 'a' && text[0] <= 'z') return static_cast<Index>(text[0] - 'a') + 1;
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos || text.size() > 9) {
        throw Error("bad symbol \"" + text + "\"");
    }
    return std::stoul(text);
}

std::vector<Index> parse_symbol_list(const std::string& text) {
    std::vector<Index> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_symbol(item));
    if (out.empty()) throw Error("empty symbol list");
    return out;
}

std::set<Index> parse_symbol_set(const std::string& text) {
    const auto list = parse_symbol_list(text);
    std::set<Index> out(list.begin(), list.end());
    if (out.size() != list.size()) throw Error("symbol list repeats an entry");
    return out;
}

Json demand_json(const DemandVector& d) { return rational_list_json(d); }

void require(bool present, const char* what) {
    if (!present) throw Error(std::string("missing ") + what);
}

Json cmd_gen(const Options& o) { return code_to_json(generated_code(o)); }

Json cmd_import(const Options& o) {
    const Json j = parse_json(read_file(o.import_path));
    // a bare list of rows (with -q), {"q", "generator"}, or a full code file
    const Json* rows = &j;
    std::uint32_t q = o.q.value_or(0);
    if (j.is_object()) {
        if (j.contains("parity_check") && !j["parity_check"].is_null()) return code_to_json(code_from_json(j));
        if (!j.contains("generator")) throw Error("import file lacks \"generator\"");
        rows = &j["generator"];
        if (j.contains("q")) {
            if (!j["q"].is_number_unsigned()) throw Error("q must be a positive integer");
            q = j["q"].get<std::uint32_t>();
        }
    }
    if (q == 0) throw Error("import needs q (-q or a \"q\" field)");
    std::vector<std::vector<std::int64_t>> entries;
    try {
        entries = rows->get<std::vector<std::vector<std::int64_t>>>();
    } catch (const nlohmann::json::exception&) {
        throw Error("generator must be a list of integer rows");
    }
    return code_to_json(import_generator(entries, q));
}

Json cmd_recovery(const Options& o) { return recovery_to_json(build_recovery_system(load_code(o), o.cap)); }

Json cmd_stats(const Options& o) {
    const SrrInstance inst = load_instance(o);
    Hypergraph h = recovery_hypergraph(inst);
    if (!o.symbols.empty()) h = partial_hypergraph(h, parse_symbol_set(o.symbols));
    const HypergraphStats stats = hypergraph_stats(h, inst.lp_options);
    if (!stats.consistent(h)) throw Error("internal: hypergraph witnesses are inconsistent");
    return stats_to_json(stats);
}

Json cmd_check(const Options& o) {
    require(!o.demand.empty(), "--demand");
    const SrrInstance inst = load_instance(o);
    const DemandVector d = parse_rational_list(o.demand);
    const MembershipResult m = membership(inst, d);
    Json out{{"member", m.member}, {"demand", demand_json(d)}, {"capacity", to_string(inst.capacity)}};
    out["allocation"] = m.allocation ? allocation_to_json(inst, *m.allocation) : Json(nullptr);
    return out;
}

Json cmd_max(const Options& o) {
    const SrrInstance inst = load_instance(o);
    const std::vector<Rational> w = o.weights.empty() ? std::vector<Rational>(inst.k(), Rational(1)) : parse_rational_list(o.weights);
    for (const auto& x : w) {
        if (x < 0) throw Error("weights must be nonnegative");
    }
    const ObjectiveResult res = max_objective(inst, w);
    return {{"weights", rational_list_json(w)},
            {"value", to_string(res.value)},
            {"demand", demand_json(res.demand)},
            {"allocation", allocation_to_json(inst, res.allocation)}};
}

Json cmd_lambda_star(const Options& o) {
    const SrrInstance inst = load_instance(o);
    if (o.symbol) return {{"symbol", *o.symbol}, {"lambda_star", to_string(lambda_star(inst, *o.symbol))}};
    return {{"lambda_star", rational_list_json(lambda_star_vector(inst))}};
}

Json cmd_delta(const Options& o) {
    const SrrInstance inst = load_instance(o);
    const auto stars = lambda_star_vector(inst);
    const Rational delta = *std::min_element(stars.begin(), stars.end());
    return {{"delta", to_string(delta)},
            {"lambda_star", rational_list_json(stars)},
            {"ceil", srrham::ceil(delta).str()},
            {"floor", srrham::floor(delta).str()},
            {"d", inst.code.d}};
}

Json cmd_subset(const Options& o) {
    const SrrInstance inst = load_instance(o);
    if (o.rows) {
        Json rows = Json::array();
        bool all = true;
        for (const auto& row : characterization_rows(inst)) {
            rows.push_back({{"subset", row.subset},
                            {"bound", to_string(row.bound)},
                            {"computed", to_string(row.computed)},
                            {"tight", row.tight()}});
            all = all && row.tight();
        }
        return {{"rows", std::move(rows)}, {"all_tight", all}};
    }
    require(!o.subset.empty(), "--subset or --rows");
    const SubsetBound b = subset_bound(inst, parse_symbol_set(o.subset));
    return {{"subset", b.subset},
            {"column_sum", b.column_sum},
            {"predicted", to_string(b.predicted)},
            {"computed", to_string(b.computed)},
            {"matches", b.matches()}};
}

Json cmd_waterfill(const Options& o) {
    require(!o.demand.empty(), "--demand");
    const SrrInstance inst = load_instance(o);
    const DemandVector d = parse_rational_list(o.demand);
    const WaterfillResult wf = waterfill(inst, d, o.event_limit);
    const AllocationCheck check = validate_allocation(inst, wf.served, wf.allocation);
    if (!check.valid) throw Error("internal: waterfilling allocation failed validation: " + check.reason);
    return {{"demand", demand_json(d)},
            {"served", demand_json(wf.served)},
            {"residual", demand_json(wf.residual)},
            {"node_loads", rational_list_json(node_loads(inst, wf.allocation))},
            {"events", wf.events},
            {"allocation", allocation_to_json(inst, wf.allocation)}};
}

Json cmd_m3(const Options& o) {
    require(o.r.has_value(), "-r");
    return {{"r", *o.r}, {"closed_form", m3_closed_form(*o.r)}, {"brute_force", m3_brute(*o.r)}};
}

Json cmd_verify(const Options& o) { return report_to_json(verify_report(load_code(o))); }

std::string cmd_slice(const Options& o) {
    require(!o.axes.empty(), "--axes");
    const SrrInstance inst = load_instance(o);
    SliceSpec spec;
    for (const auto& f : o.fix) {
        const auto eq = f.find('=');
        if (eq == std::string::npos) throw Error("--fix expects symbol=value");
        spec.fixed.emplace_back(parse_symbol(f.substr(0, eq)), parse_rational(f.substr(eq + 1)));
    }
    spec.axes = parse_symbol_list(o.axes);
    spec.max = parse_rational(o.max);
    spec.step = parse_rational(o.step);
    return slice_csv(inst, spec);
}

void add_code_source(CLI::App* sub, Options& o) {
    sub->add_option("code", o.code_path, "code JSON file");
    sub->add_option("-r", o.r, "redundancy r of a generated Hamming code");
    sub->add_option("-q", o.q, "field size q (prime)");
    sub->add_option("--layout", o.layout, "generated layout: standard or natural")->check(CLI::IsMember({"standard", "natural"}));
}

void add_instance(CLI::App* sub, Options& o) {
    add_code_source(sub, o);
    sub->add_option("--capacity", o.capacity, "per-node capacity mu (rational)");
    sub->add_option("--cap", o.cap, "recovery-set size cap for non-systematic search");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Service rate regions of Hamming codes"};
    app.set_help_all_flag("--help-all");
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--out", o.out_path, "write output to this file instead of stdout");

    std::map<std::string, std::function<std::string()>> handlers;
    auto json_cmd = [&](const std::string& name, std::function<Json()> f) {
        handlers[name] = [f] { return f().dump() + "\n"; };
    };

    CLI::App* gen = app.add_subcommand("gen", "generate a systematic Hamming code");
    gen->add_option("-r", o.r, "redundancy r")->required();
    gen->add_option("-q", o.q, "field size q (prime)")->required();
    gen->add_flag("--systematic", o.systematic, "systematic generator (always on)");
    gen->add_option("--layout", o.layout, "standard [I|P] or natural lexicographic parity check")
        ->check(CLI::IsMember({"standard", "natural"}));
    json_cmd("gen", [&] { return cmd_gen(o); });

    CLI::App* imp = app.add_subcommand("import", "validate a generator matrix and emit a code file");
    imp->add_option("matrix", o.import_path, "JSON rows, or {\"q\", \"generator\"}")->required();
    imp->add_option("-q", o.q, "field size when the file is a bare list of rows");
    json_cmd("import", [&] { return cmd_import(o); });

    CLI::App* rec = app.add_subcommand("recovery", "minimum recovery sets of every symbol");
    add_code_source(rec, o);
    rec->add_option("--cap", o.cap, "largest recovery set searched for non-systematic codes");
    json_cmd("recovery", [&] { return cmd_recovery(o); });

    CLI::App* stats = app.add_subcommand("stats", "matching, transversal and fractional matching numbers");
    add_instance(stats, o);
    stats->add_option("--symbols", o.symbols, "restrict to the partial hypergraph of these symbols");
    json_cmd("stats", [&] { return cmd_stats(o); });

    CLI::App* check = app.add_subcommand("check", "membership of a demand vector, with allocation");
    add_instance(check, o);
    check->add_option("--demand", o.demand, "comma-separated rationals")->required();
    json_cmd("check", [&] { return cmd_check(o); });

    CLI::App* mx = app.add_subcommand("max", "maximize a weighted sum of demands");
    add_instance(mx, o);
    mx->add_option("--weights", o.weights, "comma-separated rationals (default all ones)");
    json_cmd("max", [&] { return cmd_max(o); });

    CLI::App* ls = app.add_subcommand("lambda-star", "largest single-symbol demand");
    add_instance(ls, o);
    ls->add_option("--symbol", o.symbol, "1-based symbol (default: all)");
    json_cmd("lambda-star", [&] { return cmd_lambda_star(o); });

    CLI::App* dl = app.add_subcommand("delta", "largest scaled simplex inside the region");
    add_instance(dl, o);
    json_cmd("delta", [&] { return cmd_delta(o); });

    CLI::App* sb = app.add_subcommand("subset", "bound on a partial sum of demands");
    add_instance(sb, o);
    sb->add_option("--subset", o.subset, "comma-separated symbols (numbers or letters)");
    sb->add_flag("--rows", o.rows, "list every subset inequality with its tightness (k <= 10)");
    json_cmd("subset", [&] { return cmd_subset(o); });

    CLI::App* wf = app.add_subcommand("waterfill", "waterfilling allocation of a demand vector");
    add_instance(wf, o);
    wf->add_option("--demand", o.demand, "comma-separated rationals")->required();
    wf->add_option("--event-limit", o.event_limit, "maximum number of fill events");
    json_cmd("waterfill", [&] { return cmd_waterfill(o); });

    CLI::App* m3 = app.add_subcommand("m3", "zero-sum triples of parity columns");
    m3->add_option("-r", o.r, "redundancy r")->required();
    json_cmd("m3", [&] { return cmd_m3(o); });

    CLI::App* ver = app.add_subcommand("verify", "check every structural claim on a code");
    add_code_source(ver, o);
    json_cmd("verify", [&] { return cmd_verify(o); });

    CLI::App* sl = app.add_subcommand("slice", "CSV grid of membership over up to three axes");
    add_instance(sl, o);
    sl->add_option("--fix", o.fix, "symbol=value, repeatable");
    sl->add_option("--axes", o.axes, "comma-separated symbols")->required();
    sl->add_option("--max", o.max, "largest axis value");
    sl->add_option("--step", o.step, "grid step");
    handlers["slice"] = [&] { return cmd_slice(o); };

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        const std::string text = handlers.at(name)();
        if (o.out_path.empty()) {
            out << text;
        } else {
            std::ofstream file(o.out_path, std::ios::binary);
            if (!file) throw Error("cannot write " + o.out_path);
            file << text;
        }
        return kExitOk;
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::out_of_range& e) {
        err << "error: index out of range\n";
        return kExitInput;
    }
}

}  // namespace srrham::cli
