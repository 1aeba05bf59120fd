// degenzeta command-line front end: single identity verification, grid
// sweeps from a config file, and raw function evaluation. JSON/CSV/text on
// stdout, diagnostics on stderr.
//
// Exit codes: 0 pass, 1 fail, 2 usage/config error, 3 non-convergence or
// evaluation domain error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "degenzeta/degenzeta.hpp"

namespace {

using namespace degenzeta;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConverge = 3;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

enum class OutputFormat { json, csv, text };

std::optional<OutputFormat> format_from_string(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "text") return OutputFormat::text;
    return std::nullopt;
}

struct RenderOptions {
    OutputFormat format = OutputFormat::json;
    bool timings = false;  // elapsed_ms varies run to run; off by default so
                           // that identical commands give byte-identical output
};

std::string render_json(const IdentityReport& rep, const RenderOptions& opt) {
    const ParamUse use = param_use(rep.id);
    std::ostringstream os;
    os << "{\"identity\":\"" << to_string(rep.id) << "\",\"params\":{";
    os << "\"lambda\":" << fmt17(rep.params.lambda);
    if (use.p) os << ",\"p\":" << rep.params.p;
    if (use.n) os << ",\"n\":" << rep.params.n;
    if (use.r) os << ",\"r\":" << rep.params.r;
    if (use.m) os << ",\"m\":" << rep.params.m;
    os << "},\"lhs\":" << fmt17(rep.lhs.value) << ",\"rhs\":" << fmt17(rep.rhs.value)
       << ",\"lhs_tail_bound\":" << fmt17(rep.lhs.tail_bound)
       << ",\"rhs_tail_bound\":" << fmt17(rep.rhs.tail_bound)
       << ",\"abs_residual\":" << fmt17(rep.abs_residual)
       << ",\"rel_residual\":" << fmt17(rep.rel_residual)
       << ",\"tolerance\":" << fmt17(rep.tolerance)
       << ",\"pass\":" << (rep.pass ? "true" : "false")
       << ",\"terms_used\":" << rep.lhs.terms_used;
    if (rep.has_cross)
        os << ",\"cross_value\":" << fmt17(rep.cross_value)
           << ",\"cross_error_estimate\":" << fmt17(rep.cross_estimate)
           << ",\"cross_pass\":" << (rep.cross_pass ? "true" : "false");
    if (rep.error != ReportError::none) os << ",\"error\":\"" << rep.error_message << "\"";
    if (opt.timings) os << ",\"elapsed_ms\":" << fmt17(rep.elapsed_ms);
    os << "}";
    return os.str();
}

std::string csv_header(const RenderOptions& opt) {
    std::string h =
        "identity,lambda,p,n,r,m,lhs,rhs,lhs_tail_bound,rhs_tail_bound,abs_residual,"
        "rel_residual,tolerance,pass,terms_used";
    if (opt.timings) h += ",elapsed_ms";
    return h;
}

std::string render_csv(const IdentityReport& rep, const RenderOptions& opt) {
    const ParamUse use = param_use(rep.id);
    std::ostringstream os;
    os << to_string(rep.id) << ',' << fmt17(rep.params.lambda) << ','
       << (use.p ? std::to_string(rep.params.p) : "") << ','
       << (use.n ? std::to_string(rep.params.n) : "") << ','
       << (use.r ? std::to_string(rep.params.r) : "") << ','
       << (use.m ? std::to_string(rep.params.m) : "") << ',' << fmt17(rep.lhs.value) << ','
       << fmt17(rep.rhs.value) << ',' << fmt17(rep.lhs.tail_bound) << ','
       << fmt17(rep.rhs.tail_bound) << ',' << fmt17(rep.abs_residual) << ','
       << fmt17(rep.rel_residual) << ',' << fmt17(rep.tolerance) << ','
       << (rep.pass ? "true" : "false") << ',' << rep.lhs.terms_used;
    if (opt.timings) os << ',' << fmt17(rep.elapsed_ms);
    return os.str();
}

std::string render_text(const IdentityReport& rep, const RenderOptions& opt) {
    const ParamUse use = param_use(rep.id);
    std::ostringstream os;
    os << to_string(rep.id) << " lambda=" << fmt17(rep.params.lambda);
    if (use.p) os << " p=" << rep.params.p;
    if (use.n) os << " n=" << rep.params.n;
    if (use.r) os << " r=" << rep.params.r;
    if (use.m) os << " m=" << rep.params.m;
    os << ": lhs=" << fmt17(rep.lhs.value) << " rhs=" << fmt17(rep.rhs.value)
       << " abs_residual=" << fmt17(rep.abs_residual) << " tol=" << fmt17(rep.tolerance)
       << " bounds=" << fmt17(rep.lhs.tail_bound + rep.rhs.tail_bound);
    if (rep.has_cross)
        os << " cross=" << fmt17(rep.cross_value)
           << " cross_pass=" << (rep.cross_pass ? "yes" : "no");
    if (rep.error != ReportError::none) os << " error=\"" << rep.error_message << "\"";
    if (opt.timings) os << " elapsed_ms=" << fmt17(rep.elapsed_ms);
    os << (rep.pass ? " PASS" : " FAIL");
    return os.str();
}

std::string render(const IdentityReport& rep, const RenderOptions& opt) {
    switch (opt.format) {
        case OutputFormat::json: return render_json(rep, opt);
        case OutputFormat::csv: return render_csv(rep, opt);
        case OutputFormat::text: return render_text(rep, opt);
    }
    return {};
}

int exit_code_for(const IdentityReport& rep) {
    if (rep.error == ReportError::non_convergence) return kExitNoConverge;
    if (rep.error == ReportError::evaluation) return kExitNoConverge;
    return rep.pass ? kExitPass : kExitFail;
}

std::size_t default_max_terms() {
    if (const char* env = std::getenv("DEGENZETA_MAX_TERMS")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        std::cerr << "warning: ignoring malformed DEGENZETA_MAX_TERMS='" << env << "'\n";
    }
    return 100000;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int run_verify(const std::string& id_name, IdentityParams params, ToleranceBudget budget,
               const RenderOptions& opt) {
    const auto id = identity_from_string(id_name);
    if (!id) {
        std::cerr << "error: unknown identity '" << id_name << "'; valid ids:";
        for (IdentityId i : kAllIdentities) std::cerr << ' ' << to_string(i);
        std::cerr << '\n';
        return kExitUsage;
    }
    try {
        validate_params(*id, params);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    const IdentityReport rep = verify(*id, params, budget);
    if (opt.format == OutputFormat::csv) std::cout << csv_header(opt) << '\n';
    std::cout << render(rep, opt) << '\n';
    return exit_code_for(rep);
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepConfig {
    std::vector<IdentityId> identities;
    std::vector<double> lambdas;
    std::vector<int> p_range, n_range, r_range, m_range;
    ToleranceBudget budget;
    RenderOptions render;
    unsigned parallelism = 1;
    bool extended = false;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    for (auto& item : out) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        item = (b == std::string::npos) ? "" : item.substr(b, e - b + 1);
    }
    out.erase(std::remove(out.begin(), out.end(), std::string{}), out.end());
    return out;
}

// "a..b" inclusive range or a comma list of integers
std::optional<std::vector<int>> parse_int_range(const std::string& s) {
    const auto dots = s.find("..");
    std::vector<int> out;
    try {
        if (dots != std::string::npos) {
            const int lo = std::stoi(s.substr(0, dots));
            const int hi = std::stoi(s.substr(dots + 2));
            if (hi < lo) return std::nullopt;
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            for (const auto& item : split_list(s)) out.push_back(std::stoi(item));
        }
    } catch (...) {
        return std::nullopt;
    }
    return out;
}

int parse_config(const std::string& path, SweepConfig& cfg) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open config file '" << path << "'\n";
        return kExitUsage;
    }
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: config line " << lineno << " is not 'key = value'\n";
            return kExitUsage;
        }
        auto trim = [](std::string s) {
            const auto x = s.find_first_not_of(" \t\r");
            if (x == std::string::npos) return std::string{};
            const auto y = s.find_last_not_of(" \t\r");
            return s.substr(x, y - x + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    static const std::vector<std::string> known = {
        "identities", "lambdas",   "p_range",       "n_range",       "r_range",
        "m_range",    "tol",       "max_terms",     "quad_tol",      "quad_max_panels",
        "output_format", "parallelism", "extended"};
    for (const auto& [key, value] : kv) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            std::cerr << "error: unknown config key '" << key << "'\n";
            return kExitUsage;
        }
    }

    if (!kv.count("identities")) {
        std::cerr << "error: config is missing required key 'identities'\n";
        return kExitUsage;
    }
    if (!kv.count("lambdas")) {
        std::cerr << "error: config is missing required key 'lambdas'\n";
        return kExitUsage;
    }
    for (const auto& name : split_list(kv["identities"])) {
        const auto id = identity_from_string(name);
        if (!id) {
            std::cerr << "error: key 'identities' lists unknown identity '" << name << "'\n";
            return kExitUsage;
        }
        cfg.identities.push_back(*id);
    }
    if (kv.count("extended")) cfg.extended = (kv["extended"] == "true" || kv["extended"] == "1");
    for (const auto& item : split_list(kv["lambdas"])) {
        try {
            cfg.lambdas.push_back(std::stod(item));
        } catch (...) {
            std::cerr << "error: key 'lambdas' has malformed entry '" << item << "'\n";
            return kExitUsage;
        }
        const double lv = cfg.lambdas.back();
        if (!cfg.extended && !(lv > 0.0 && lv <= 1.0)) {
            std::cerr << "error: key 'lambdas' entry " << item
                      << " is outside the strict-mode domain (0,1]\n";
            return kExitUsage;
        }
    }
    if (cfg.identities.empty() || cfg.lambdas.empty()) {
        std::cerr << "error: keys 'identities' and 'lambdas' must be non-empty\n";
        return kExitUsage;
    }

    auto get_range = [&](const char* key, std::vector<int>& dst) -> int {
        if (!kv.count(key)) return kExitPass;
        const auto parsed = parse_int_range(kv[key]);
        if (!parsed || parsed->empty()) {
            std::cerr << "error: key '" << key << "' has malformed range '" << kv[key] << "'\n";
            return kExitUsage;
        }
        dst = *parsed;
        return kExitPass;
    };
    if (get_range("p_range", cfg.p_range)) return kExitUsage;
    if (get_range("n_range", cfg.n_range)) return kExitUsage;
    if (get_range("r_range", cfg.r_range)) return kExitUsage;
    if (get_range("m_range", cfg.m_range)) return kExitUsage;

    auto get_double = [&](const char* key, double& dst) -> int {
        if (!kv.count(key)) return kExitPass;
        try {
            dst = std::stod(kv[key]);
        } catch (...) {
            std::cerr << "error: key '" << key << "' has malformed value '" << kv[key] << "'\n";
            return kExitUsage;
        }
        if (!(dst > 0.0)) {
            std::cerr << "error: key '" << key << "' must be positive\n";
            return kExitUsage;
        }
        return kExitPass;
    };
    if (get_double("tol", cfg.budget.tol)) return kExitUsage;
    if (get_double("quad_tol", cfg.budget.quad_tol)) return kExitUsage;

    auto get_count = [&](const char* key, std::size_t& dst) -> int {
        if (!kv.count(key)) return kExitPass;
        try {
            const long long v = std::stoll(kv[key]);
            if (v <= 0) throw std::invalid_argument("nonpositive");
            dst = static_cast<std::size_t>(v);
        } catch (...) {
            std::cerr << "error: key '" << key << "' must be a positive integer\n";
            return kExitUsage;
        }
        return kExitPass;
    };
    if (get_count("max_terms", cfg.budget.max_terms)) return kExitUsage;
    if (get_count("quad_max_panels", cfg.budget.quad_max_panels)) return kExitUsage;

    if (kv.count("output_format")) {
        const auto f = format_from_string(kv["output_format"]);
        if (!f) {
            std::cerr << "error: key 'output_format' must be json, csv or text\n";
            return kExitUsage;
        }
        cfg.render.format = *f;
    }
    if (kv.count("parallelism")) {
        std::size_t par = 1;
        if (get_count("parallelism", par)) return kExitUsage;
        cfg.parallelism = static_cast<unsigned>(par);
    }
    return kExitPass;
}

struct SweepJob {
    IdentityId id;
    IdentityParams params;
};

bool job_order(const SweepJob& a, const SweepJob& b) {
    const auto ka = std::make_tuple(to_string(a.id), a.params.lambda, a.params.p, a.params.n,
                                    a.params.r, a.params.m);
    const auto kb = std::make_tuple(to_string(b.id), b.params.lambda, b.params.p, b.params.n,
                                    b.params.r, b.params.m);
    return ka < kb;
}

bool params_valid(IdentityId id, const IdentityParams& q) {
    try {
        validate_params(id, q);
        return true;
    } catch (...) {
        return false;
    }
}

int run_sweep(const std::string& config_path, const RenderOptions& cli_render,
              bool render_overridden) {
    SweepConfig cfg;
    cfg.budget.max_terms = default_max_terms();
    if (int rc = parse_config(config_path, cfg)) return rc;
    RenderOptions opt = cfg.render;
    if (render_overridden) opt = cli_render;

    // Expand the grid over exactly the parameters each identity uses;
    // tuples violating an id's constraints are skipped.
    std::vector<SweepJob> jobs;
    auto range_or = [](const std::vector<int>& range, int fallback) {
        return range.empty() ? std::vector<int>{fallback} : range;
    };
    for (IdentityId id : cfg.identities) {
        const ParamUse use = param_use(id);
        const auto ps = use.p ? range_or(cfg.p_range, 1) : std::vector<int>{0};
        const auto ns = use.n ? range_or(cfg.n_range, 1) : std::vector<int>{0};
        const auto rs = use.r ? range_or(cfg.r_range, 1) : std::vector<int>{0};
        const auto ms = use.m ? range_or(cfg.m_range, 1) : std::vector<int>{0};
        for (double lambda : cfg.lambdas)
            for (int p : ps)
                for (int n : ns)
                    for (int r : rs)
                        for (int m : ms) {
                            const IdentityParams q{lambda, p, n, r, m};
                            if (params_valid(id, q)) jobs.push_back({id, q});
                        }
    }
    std::sort(jobs.begin(), jobs.end(), job_order);

    std::vector<IdentityReport> reports(jobs.size());
    const unsigned workers =
        std::max(1u, std::min<unsigned>(cfg.parallelism, std::thread::hardware_concurrency()));
    if (workers <= 1 || jobs.size() <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            reports[i] = verify(jobs[i].id, jobs[i].params, cfg.budget);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < jobs.size(); i += workers)
                    reports[i] = verify(jobs[i].id, jobs[i].params, cfg.budget);
            });
        for (auto& th : pool) th.join();
    }

    if (opt.format == OutputFormat::csv) std::cout << csv_header(opt) << '\n';
    std::size_t passed = 0;
    for (const auto& rep : reports) {
        std::cout << render(rep, opt) << '\n';
        if (rep.pass) ++passed;
    }
    std::cerr << "sweep: " << passed << "/" << reports.size() << " passed, "
              << (reports.size() - passed) << " failed\n";
    return passed == reports.size() ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalArgs {
    double s = 2.0, x = 1.0, t = 0.5, lambda = 0.5, alpha = 1.0;
    int p = 1, k = 2;
    long long n = 0, r = 1, big_n = 1;
    double tol = 1e-10;
    std::size_t max_terms = 0;  // 0 = use function default
    bool extended = false;
};

void print_eval(const std::string& name, const SeriesValue& sv, OutputFormat format) {
    if (format == OutputFormat::json) {
        std::cout << "{\"function\":\"" << name << "\",\"value\":" << fmt17(sv.value)
                  << ",\"tail_bound\":" << fmt17(sv.tail_bound)
                  << ",\"terms_used\":" << sv.terms_used
                  << ",\"converged\":" << (sv.converged ? "true" : "false")
                  << ",\"certified\":" << (sv.certified ? "true" : "false") << "}\n";
    } else {
        std::cout << name << ": value=" << fmt17(sv.value)
                  << " tail_bound=" << fmt17(sv.tail_bound) << " terms_used=" << sv.terms_used
                  << " converged=" << (sv.converged ? "yes" : "no")
                  << " certified=" << (sv.certified ? "yes" : "no") << '\n';
    }
}

int run_eval(const std::string& fn, const EvalArgs& a, OutputFormat format) {
    try {
        const DegenParam lam(a.lambda,
                             a.extended ? DomainMode::extended : DomainMode::strict);
        if (fn == "zeta") {
            print_eval(fn, zeta(a.s, lam, a.tol, a.max_terms ? a.max_terms : 4000000), format);
        } else if (fn == "hurwitz") {
            print_eval(fn, hurwitz(a.k, a.x, lam, a.tol, a.max_terms ? a.max_terms : 50000000),
                       format);
        } else if (fn == "polylog") {
            print_eval(fn, polylog(a.p, a.t, lam, a.tol, a.max_terms ? a.max_terms : 1000000),
                       format);
        } else if (fn == "harmonic") {
            const double v = harmonic(static_cast<std::size_t>(a.n), lam);
            print_eval(fn, {v, 0.0, static_cast<std::size_t>(a.n), true, true}, format);
        } else if (fn == "harmonic_higher") {
            const double v = harmonic_higher(static_cast<std::size_t>(a.n), a.p, lam);
            print_eval(fn, {v, 0.0, static_cast<std::size_t>(a.n), true, true}, format);
        } else if (fn == "convolution") {
            const auto table = convolution(static_cast<std::size_t>(a.big_n), a.p, lam);
            print_eval(fn,
                       {table.values[static_cast<std::size_t>(a.big_n)], 0.0,
                        static_cast<std::size_t>(a.big_n), true, true},
                       format);
        } else if (fn == "integral_closed") {
            const double v = integral_closed(static_cast<int>(a.r), a.p, lam);
            print_eval(fn, {v, 0.0, 0, true, true}, format);
        } else if (fn == "integral_quadrature") {
            const QuadratureResult qr =
                integral_quadrature(static_cast<int>(a.r), a.p, lam, a.tol);
            print_eval(fn, {qr.value, qr.error_estimate, qr.evaluations, qr.converged, false},
                       format);
        } else {
            std::cerr << "error: unknown function '" << fn
                      << "'; valid: zeta hurwitz polylog harmonic harmonic_higher convolution "
                         "integral_closed integral_quadrature\n";
            return kExitUsage;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNoConverge;
    }
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"degenerate special functions and identity verification"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format_name = "json";
    bool timings = false;
    app.add_option("--format", format_name, "output format: json, csv or text")
        ->capture_default_str();
    app.add_flag("--timings", timings, "include elapsed_ms in reports");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "verify one identity instance");
    std::string id_name;
    IdentityParams params;
    ToleranceBudget budget;
    budget.max_terms = default_max_terms();
    verify_cmd->add_option("--identity,-i", id_name, "identity id")->required();
    verify_cmd->add_option("--lambda", params.lambda, "degeneracy parameter")->required();
    verify_cmd->add_option("--p", params.p, "order p");
    verify_cmd->add_option("--n", params.n, "parameter n");
    verify_cmd->add_option("--r", params.r, "parameter r");
    verify_cmd->add_option("--m", params.m, "parameter m");
    verify_cmd->add_option("--tol", budget.tol, "verification tolerance");
    verify_cmd->add_option("--max-terms", budget.max_terms, "series term budget");
    verify_cmd->add_option("--quad-tol", budget.quad_tol, "quadrature tolerance");
    verify_cmd->add_option("--quad-max-panels", budget.quad_max_panels,
                           "quadrature subdivision limit");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep from a config file");
    std::string config_path;
    sweep_cmd->add_option("config", config_path, "sweep config file")->required();

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate one library function");
    std::string fn_name;
    EvalArgs eargs;
    eval_cmd->add_option("function", fn_name, "function name")->required();
    eval_cmd->add_option("--s", eargs.s, "zeta argument s");
    eval_cmd->add_option("--k", eargs.k, "hurwitz order k");
    eval_cmd->add_option("--x", eargs.x, "hurwitz shift x");
    eval_cmd->add_option("--t", eargs.t, "polylog argument t");
    eval_cmd->add_option("--lambda", eargs.lambda, "degeneracy parameter");
    eval_cmd->add_option("--p", eargs.p, "order p");
    eval_cmd->add_option("--n", eargs.n, "index n");
    eval_cmd->add_option("--N", eargs.big_n, "table size N");
    eval_cmd->add_option("--r", eargs.r, "parameter r");
    eval_cmd->add_option("--tol", eargs.tol, "tolerance");
    eval_cmd->add_option("--max-terms", eargs.max_terms, "term budget");
    eval_cmd->add_flag("--extended", eargs.extended, "extended lambda domain");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const auto format = format_from_string(format_name);
    if (!format) {
        std::cerr << "error: unknown format '" << format_name << "'\n";
        return kExitUsage;
    }
    RenderOptions ropt{*format, timings};

    if (verify_cmd->parsed()) {
        if (!(budget.tol > 0.0) || !(budget.quad_tol > 0.0) || budget.max_terms == 0) {
            std::cerr << "error: tolerances must be positive and max-terms >= 1\n";
            return kExitUsage;
        }
        return run_verify(id_name, params, budget, ropt);
    }
    if (sweep_cmd->parsed()) {
        const bool overridden =
            app.count("--format") > 0 || app.count("--timings") > 0;
        return run_sweep(config_path, ropt, overridden);
    }
    if (eval_cmd->parsed()) return run_eval(fn_name, eargs, *format);
    return kExitUsage;
}
