// Command-line harness around ubgd::core: configure a descent run, execute
// one of the step-size schemes, and emit the trace CSV plus a machine
// readable audit summary. Subcommands: run, compare, check, list.

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ubgd/ubgd.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Always reported as "config key '<key>': ..."; the CLI exits 64 on these.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& key, const std::string& what)
        : std::runtime_error("config key '" + key + "': " + what) {}
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(path, std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError(path, "config must be a JSON object");
    return j;
}

void check_known_keys(const json& j, std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError(item.key(), "unknown key");
    }
}

double need_double(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError(key, "missing required key");
    if (!j.at(key).is_number()) throw ConfigError(key, "must be a number");
    return j.at(key).get<double>();
}

double opt_double(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError(key, "must be a number");
    return j.at(key).get<double>();
}

std::uint64_t opt_uint(const json& j, const std::string& key, std::uint64_t fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_unsigned()) throw ConfigError(key, "must be a non-negative integer");
    return j.at(key).get<std::uint64_t>();
}

std::string need_string(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError(key, "missing required key");
    if (!j.at(key).is_string()) throw ConfigError(key, "must be a string");
    return j.at(key).get<std::string>();
}

ubgd::Vector parse_x0(const json& j, const ubgd::CorpusEntry& entry) {
    if (!j.contains("x0")) throw ConfigError("x0", "missing required key");
    const json& arr = j.at("x0");
    if (!arr.is_array() || arr.empty()) throw ConfigError("x0", "must be a non-empty array of numbers");
    ubgd::Vector x0;
    for (const auto& v : arr) {
        if (!v.is_number()) throw ConfigError("x0", "must be a non-empty array of numbers");
        x0.push_back(v.get<double>());
    }
    if (!ubgd::all_finite(x0)) throw ConfigError("x0", "entries must be finite");
    if (x0.size() != entry.dim()) {
        throw ConfigError("x0", "dimension " + std::to_string(x0.size()) + " does not match objective '" +
                                    entry.name + "' (dim " + std::to_string(entry.dim()) + ")");
    }
    return x0;
}

ubgd::LineSearchParams parse_params(const json& j) {
    ubgd::LineSearchParams p;
    p.alpha = opt_double(j, "alpha", p.alpha);
    p.beta = opt_double(j, "beta", p.beta);
    p.delta0 = opt_double(j, "delta0", p.delta0);
    p.grad_tol = opt_double(j, "grad_tol", p.grad_tol);
    p.max_halvings = static_cast<int>(opt_uint(j, "max_halvings", static_cast<std::uint64_t>(p.max_halvings)));
    try {
        ubgd::validate(p);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("alpha/beta/delta0/grad_tol/max_halvings", e.what());
    }
    return p;
}

ubgd::GrowthFunction parse_growth(const json& cfg, double delta0) {
    if (!cfg.contains("growth")) {
        return ubgd::GrowthFunction::power_law(delta0, 0.5);  // harness default
    }
    const json& g = cfg.at("growth");
    if (!g.is_object()) throw ConfigError("growth", "must be an object");
    check_known_keys(g, {"kind", "C", "gamma", "c"});
    const std::string kind = need_string(g, "kind");
    try {
        if (kind == "power_law") {
            return ubgd::GrowthFunction::power_law(need_double(g, "C"), need_double(g, "gamma"));
        }
        if (kind == "constant") {
            return ubgd::GrowthFunction::constant(need_double(g, "c"));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError("growth", e.what());
    }
    throw ConfigError("growth.kind", "must be 'power_law' or 'constant'");
}

// A scheme spec is one of standard, backtracking, unbounded, twoway, hybrid,
// optionally with a colon argument overriding the config value:
// standard:<delta>, hybrid:<N>.
ubgd::Scheme parse_scheme_spec(const std::string& spec, const json& cfg,
                               const ubgd::LineSearchParams& params) {
    std::string base = spec;
    std::string arg;
    if (const auto pos = spec.find(':'); pos != std::string::npos) {
        base = spec.substr(0, pos);
        arg = spec.substr(pos + 1);
    }
    if (base == "standard") {
        double delta = 0.0;
        if (!arg.empty()) {
            try {
                delta = std::stod(arg);
            } catch (const std::exception&) {
                throw ConfigError("scheme", "bad delta in '" + spec + "'");
            }
        } else {
            delta = need_double(cfg, "fixed_delta");
        }
        if (!(delta > 0.0)) throw ConfigError("fixed_delta", "must be > 0");
        return ubgd::StandardScheme{delta};
    }
    if (!arg.empty() && base != "hybrid") throw ConfigError("scheme", "'" + base + "' takes no argument");
    if (base == "backtracking") return ubgd::BacktrackingScheme{};
    if (base == "twoway") return ubgd::TwoWayScheme{};
    if (base == "unbounded") return ubgd::UnboundedScheme{parse_growth(cfg, params.delta0)};
    if (base == "hybrid") {
        long n = 0;
        if (!arg.empty()) {
            try {
                n = std::stol(arg);
            } catch (const std::exception&) {
                throw ConfigError("scheme", "bad period in '" + spec + "'");
            }
        } else {
            if (!cfg.contains("N")) throw ConfigError("N", "missing required key (hybrid period)");
            n = static_cast<long>(opt_uint(cfg, "N", 0));
        }
        if (n < 1) throw ConfigError("N", "hybrid period must be >= 1");
        return ubgd::HybridScheme{static_cast<int>(n)};
    }
    throw ConfigError("scheme", "unknown scheme '" + spec + "'");
}

std::size_t resolve_max_iters(const json& cfg) {
    std::size_t max_iters = static_cast<std::size_t>(opt_uint(cfg, "max_iters", 100000));
    if (const char* env = std::getenv("UBGD_MAX_ITERS")) {
        const std::string s(env);
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw ConfigError("UBGD_MAX_ITERS", "must be a non-negative integer, got '" + s + "'");
        }
        max_iters = static_cast<std::size_t>(std::stoull(s));
    }
    return max_iters;
}

ubgd::TargetPredicate parse_target(const json& cfg, const ubgd::CorpusEntry& entry) {
    if (!cfg.contains("target")) throw ConfigError("target", "missing required key");
    const json& t = cfg.at("target");
    if (!t.is_object()) throw ConfigError("target", "must be an object");
    check_known_keys(t, {"kind", "value", "point"});
    const std::string kind = need_string(t, "kind");
    const double value = need_double(t, "value");
    if (!(value > 0.0)) throw ConfigError("target.value", "must be > 0");
    if (kind == "norm_below") {
        return [value](const ubgd::Vector& x) { return ubgd::norm(x) < value; };
    }
    if (kind == "dist_below") {
        if (!t.contains("point") || !t.at("point").is_array()) {
            throw ConfigError("target.point", "must be an array of numbers");
        }
        ubgd::Vector p;
        for (const auto& v : t.at("point")) {
            if (!v.is_number()) throw ConfigError("target.point", "must be an array of numbers");
            p.push_back(v.get<double>());
        }
        if (p.size() != entry.dim()) throw ConfigError("target.point", "dimension mismatch");
        return [value, p](const ubgd::Vector& x) { return ubgd::distance(x, p) < value; };
    }
    throw ConfigError("target.kind", "must be 'norm_below' or 'dist_below'");
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

fs::path audit_path_for(const fs::path& csv_path) {
    fs::path p = csv_path;
    p.replace_extension();
    p += ".audit.json";
    return p;
}

int severity(ubgd::Termination t) {
    switch (t) {
        case ubgd::Termination::CriticalPoint:
        case ubgd::Termination::MaxIters: return 0;
        case ubgd::Termination::DivergingF:
        case ubgd::Termination::DivergingX: return 2;
        case ubgd::Termination::NumericalFailure: return 3;
    }
    return 3;
}

constexpr std::initializer_list<const char*> kRunKeys = {
    "objective", "x0", "seeds", "scheme", "alpha", "beta", "delta0", "grad_tol",
    "max_halvings", "N", "fixed_delta", "growth", "max_iters",
    "divergence_x_threshold", "divergence_f_threshold", "target", "output"};

const ubgd::CorpusEntry& resolve_objective(const json& cfg) {
    const std::string name = need_string(cfg, "objective");
    const ubgd::CorpusEntry* entry = ubgd::corpus_find(name);
    if (!entry) throw ConfigError("objective", "unknown corpus entry '" + name + "'");
    return *entry;
}

ubgd::RunConfig base_run_config(const json& cfg, const ubgd::CorpusEntry& entry) {
    ubgd::RunConfig rc;
    rc.params = parse_params(cfg);
    rc.scheme = parse_scheme_spec(need_string(cfg, "scheme"), cfg, rc.params);
    rc.max_iters = resolve_max_iters(cfg);
    rc.divergence_x_threshold = opt_double(cfg, "divergence_x_threshold", rc.divergence_x_threshold);
    rc.divergence_f_threshold = opt_double(cfg, "divergence_f_threshold", rc.divergence_f_threshold);
    (void)entry;
    return rc;
}

int do_run(const std::string& config_path) {
    const json cfg = load_config(config_path);
    check_known_keys(cfg, kRunKeys);
    const ubgd::CorpusEntry& entry = resolve_objective(cfg);
    ubgd::RunConfig rc = base_run_config(cfg, entry);
    const fs::path output = need_string(cfg, "output");

    // Starts: an explicit x0, or test-box samples drawn per seed.
    std::vector<std::pair<std::string, ubgd::Vector>> starts;
    if (cfg.contains("seeds")) {
        if (cfg.contains("x0")) throw ConfigError("seeds", "give either x0 or seeds, not both");
        if (!cfg.at("seeds").is_array() || cfg.at("seeds").empty()) {
            throw ConfigError("seeds", "must be a non-empty array of non-negative integers");
        }
        for (const auto& s : cfg.at("seeds")) {
            if (!s.is_number_unsigned()) throw ConfigError("seeds", "must be non-negative integers");
            const auto seed = s.get<std::uint64_t>();
            fs::path p = output;
            p.replace_extension();
            p += "_seed" + std::to_string(seed);
            p += output.extension();
            starts.emplace_back(p.string(), ubgd::sample_in_box(entry, seed));
        }
    } else {
        starts.emplace_back(output.string(), parse_x0(cfg, entry));
    }

    int worst = 0;
    for (const auto& [path, x0] : starts) {
        rc.x0 = x0;
        const ubgd::Objective obj = entry.make_objective();
        const ubgd::Trace trace = ubgd::run(obj, rc);
        const ubgd::TheoremAudit theorem_audit = ubgd::audit(trace, obj, rc);

        write_file(path, ubgd::trace_csv_string(trace));
        const fs::path audit_file = audit_path_for(path);
        write_file(audit_file,
                   ubgd::render_audit_json(theorem_audit, trace, {ubgd::scheme_name(rc.scheme), entry.name}));

        std::cout << entry.name << " " << ubgd::scheme_name(rc.scheme) << ": " << to_string(trace.termination)
                  << " after " << trace.records.size() << " steps, final_f=" << trace.final_f
                  << ", ||grad||=" << trace.final_grad_norm << "\n  trace: " << path
                  << "\n  audit: " << audit_file.string() << "\n";
        worst = std::max(worst, severity(trace.termination));
    }
    return worst;
}

int do_compare(const std::string& config_path, const std::vector<std::string>& scheme_specs) {
    if (scheme_specs.size() < 2) {
        std::cerr << "error: compare needs at least 2 schemes\n";
        return 64;
    }
    const json cfg = load_config(config_path);
    check_known_keys(cfg, kRunKeys);
    if (cfg.contains("scheme")) throw ConfigError("scheme", "compare takes schemes on the command line");
    if (cfg.contains("seeds")) throw ConfigError("seeds", "compare runs every scheme from one x0");
    const ubgd::CorpusEntry& entry = resolve_objective(cfg);

    ubgd::RunConfig rc;
    rc.params = parse_params(cfg);
    rc.max_iters = resolve_max_iters(cfg);
    rc.divergence_x_threshold = opt_double(cfg, "divergence_x_threshold", rc.divergence_x_threshold);
    rc.divergence_f_threshold = opt_double(cfg, "divergence_f_threshold", rc.divergence_f_threshold);
    rc.x0 = parse_x0(cfg, entry);
    const ubgd::TargetPredicate target = parse_target(cfg, entry);
    const fs::path output = need_string(cfg, "output");

    std::vector<ubgd::Trace> traces;
    traces.reserve(scheme_specs.size());
    for (const std::string& spec : scheme_specs) {
        rc.scheme = parse_scheme_spec(spec, cfg, rc.params);
        const ubgd::Objective obj = entry.make_objective();
        traces.push_back(ubgd::run(obj, rc));
    }

    std::vector<std::pair<std::string, const ubgd::Trace*>> labeled;
    for (std::size_t i = 0; i < traces.size(); ++i) labeled.emplace_back(scheme_specs[i], &traces[i]);
    const auto table = ubgd::compare(labeled, target);

    std::ostringstream csv;
    csv << "scheme,iters_to_target,value_evals,grad_evals,termination\n";
    for (const auto& row : table) {
        csv << row.scheme << ',';
        if (row.iters_to_target) {
            csv << *row.iters_to_target;
        } else {
            csv << "inf";
        }
        csv << ',' << row.value_evals << ',' << row.gradient_evals << ',' << to_string(row.termination)
            << '\n';
    }
    write_file(output, csv.str());
    std::cout << csv.str() << "table: " << output.string() << "\n";
    return 0;
}

int do_check(const std::string& name) {
    std::vector<const ubgd::CorpusEntry*> entries;
    if (name == "all") {
        for (const auto& e : ubgd::corpus_list()) entries.push_back(&e);
    } else {
        const ubgd::CorpusEntry* entry = ubgd::corpus_find(name);
        if (!entry) {
            std::cerr << "error: config key 'objective': unknown corpus entry '" << name << "'\n";
            return 64;
        }
        entries.push_back(entry);
    }

    constexpr double kFdBound = 1e-5;
    bool all_ok = true;
    for (const ubgd::CorpusEntry* entry : entries) {
        const auto fd = ubgd::gradient_check(*entry);
        const auto lip = ubgd::lipschitz_audit(*entry);
        const bool fd_ok = fd.max_rel_error < kFdBound;
        const bool lip_ok = !lip.has_data || lip.violations == 0;
        all_ok = all_ok && fd_ok && lip_ok;

        std::cout << entry->name << ": fd_max_rel_err=" << fd.max_rel_error;
        if (lip.has_data) {
            std::cout << " lipschitz_worst_ratio=" << lip.worst_ratio << " violations=" << lip.violations;
        } else {
            std::cout << " lipschitz=skipped (no declared r,L)";
        }
        std::cout << (fd_ok && lip_ok ? " PASS" : " FAIL") << "\n";
    }
    std::cout << (all_ok ? "check: all entries passed" : "check: FAILURES above") << "\n";
    return all_ok ? 0 : 1;
}

int do_list() {
    for (const auto& e : ubgd::corpus_list()) {
        std::cout << e.name << "  dim=" << e.dim() << "  box=[" << e.test_box[0].first << ","
                  << e.test_box[0].second << "]  tags=";
        for (std::size_t i = 0; i < e.tags.size(); ++i) {
            if (i) std::cout << ',';
            std::cout << to_string(e.tags[i]);
        }
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Backtracking gradient-descent harness (bounded, unbounded, two-way, hybrid schemes)"};
    app.require_subcommand(1);

    std::string config_path;
    std::string check_name;
    std::vector<std::string> scheme_specs;

    CLI::App* cmd_run = app.add_subcommand("run", "Execute one configured run; write trace CSV + audit JSON");
    cmd_run->add_option("config", config_path, "JSON config file")->required();

    CLI::App* cmd_compare =
        app.add_subcommand("compare", "Run >=2 schemes from one start and tabulate iterations-to-target");
    cmd_compare->add_option("config", config_path, "JSON config file")->required();
    cmd_compare->add_option("schemes", scheme_specs, "scheme specs, e.g. backtracking unbounded hybrid:5")
        ->required();

    CLI::App* cmd_check = app.add_subcommand("check", "Gradient and Lipschitz checks for corpus entries");
    cmd_check->add_option("name", check_name, "corpus entry name, or 'all'")->required();

    CLI::App* cmd_list = app.add_subcommand("list", "List corpus objectives");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (cmd_run->parsed()) return do_run(config_path);
        if (cmd_compare->parsed()) return do_compare(config_path, scheme_specs);
        if (cmd_check->parsed()) return do_check(check_name);
        if (cmd_list->parsed()) return do_list();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    }
    return 64;
}
