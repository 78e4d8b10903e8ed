#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "plap/closed_forms.hpp"
#include "plap/config.hpp"
#include "plap/elliptic.hpp"
#include "plap/errors.hpp"
#include "plap/grid.hpp"
#include "plap/parabolic.hpp"
#include "plap/principles.hpp"
#include "plap/scenarios.hpp"

namespace {

using namespace plap;

std::string fmt(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.15g", v);
    return b;
}

std::string resolve_out_dir(const std::string& cli_value) {
    if (!cli_value.empty()) return cli_value;
    if (const char* env = std::getenv("PLAP_OUT_DIR"); env && *env) return env;
    return "plap-out";
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
    case ErrKind::config_error:
    case ErrKind::unknown_scenario:
    case ErrKind::mesh_too_coarse:
    case ErrKind::invalid_parameter:
    case ErrKind::invalid_geometry:
    case ErrKind::incompatible_fields:
        return 2;
    default:
        return 3;
    }
}

// ---------------------------------------------------------------------------

struct SolveArgs {
    std::string config_path;
    std::string out;
    std::vector<std::pair<std::string, std::string>> overrides;
};

std::pair<double, double> parse_domain(const std::string& raw, const Config& cfg) {
    const auto comma = raw.find(',');
    if (comma == std::string::npos)
        fail(ErrKind::config_error, cfg.source + ": key 'domain' expects 'a, b'");
    char* end = nullptr;
    const double a = std::strtod(raw.c_str(), &end);
    const std::string rest = raw.substr(comma + 1);
    char* end2 = nullptr;
    const double b = std::strtod(rest.c_str(), &end2);
    if (end == raw.c_str() || end2 == rest.c_str())
        fail(ErrKind::config_error, cfg.source + ": key 'domain' expects 'a, b'");
    return {a, b};
}

ProblemSpec spec_from_config(const Config& cfg, Grid& g_out, double& T_out, long& mT_out) {
    require_keys(cfg, {"p", "lambda", "domain", "n", "T", "mT", "reaction", "source", "initial"});
    restrict_keys(cfg, {"p", "lambda", "domain", "n", "T", "mT", "reaction", "source", "initial",
                        "eps_reg", "newton_tol", "newton_max_iters", "capacity"});

    ProblemSpec spec;
    spec.p = cfg.get_real("p");
    spec.lambda = cfg.get_real("lambda");
    const auto [a, b] = parse_domain(cfg.get_string("domain"), cfg);
    const long n = cfg.get_int("n");
    g_out = make_interval_grid(a, b, static_cast<int>(n));
    spec.grid = g_out;
    T_out = cfg.get_real("T");
    mT_out = cfg.get_int("mT");

    const std::string reaction = cfg.get_string("reaction");
    if (reaction == "power") {
        spec.reaction = ReactionKind::power;
    } else if (reaction == "logistic") {
        spec.reaction = ReactionKind::logistic;
        const double cap = cfg.has("capacity") ? cfg.get_real("capacity") : 1.0;
        spec.capacity = make_field(g_out, cap);
    } else {
        fail(ErrKind::config_error,
             cfg.source + ": key 'reaction' must be power or logistic, got '" + reaction + "'");
    }

    const std::string source = cfg.get_string("source");
    if (source == "zero") {
        // null handle means zero
    } else if (source == "one") {
        spec.source = [](double, double) { return 1.0; };
    } else if (source.rfind("const:", 0) == 0) {
        char* end = nullptr;
        const std::string tail = source.substr(6);
        const double c = std::strtod(tail.c_str(), &end);
        if (end == tail.c_str() || *end != '\0')
            fail(ErrKind::config_error, cfg.source + ": source 'const:' needs a real value");
        spec.source = [c](double, double) { return c; };
    } else {
        fail(ErrKind::config_error, cfg.source + ": key 'source' must be zero, one or const:<v>, got '" +
                                        source + "'");
    }

    const std::string initial = cfg.get_string("initial");
    if (initial == "zero") {
        spec.initial = make_field(g_out);
    } else if (initial == "bump") {
        spec.initial = sample(g_out, [](double x) {
            const double s = 0.25 - x * x;
            return s > 0.0 ? 6.4 * s * s * s : 0.0;
        });
    } else if (initial == "barenblatt") {
        const BarenblattParams bp = make_barenblatt_params(spec.p, 1, 1.0, 1.0);
        spec.initial = sample(g_out, [&](double x) { return barenblatt(x, 0.0, bp); });
    } else if (initial == "extinction") {
        if (std::abs(a + 1.0) > 1e-12 || std::abs(b - 1.0) > 1e-12)
            fail(ErrKind::config_error,
                 cfg.source + ": initial 'extinction' expects domain = -1, 1");
        const ExtinctionParams ep = make_extinction_params(spec.p, 0.5, g_out.n);
        spec.initial = make_field(g_out);
        const double a0 = extinction_time_factor(0.0, ep);
        for (int i = 0; i < g_out.n; ++i) spec.initial[i] = a0 * ep.profile[i];
    } else {
        fail(ErrKind::config_error,
             cfg.source + ": key 'initial' must be zero, bump, barenblatt or extinction, got '" +
                 initial + "'");
    }

    if (cfg.has("eps_reg")) spec.eps_reg = cfg.get_real("eps_reg");
    if (cfg.has("newton_tol")) spec.newton_tol = cfg.get_real("newton_tol");
    if (cfg.has("newton_max_iters"))
        spec.newton_max_iters = static_cast<int>(cfg.get_int("newton_max_iters"));
    return spec;
}

int run_solve(const SolveArgs& args) {
    Config cfg = parse_config(args.config_path);
    for (const auto& [k, v] : args.overrides) cfg.set(k, v);

    Grid g;
    double T = 0.0;
    long mT = 0;
    ProblemSpec spec = spec_from_config(cfg, g, T, mT);
    const TimeMesh tm = make_time_mesh(0.0, T, static_cast<int>(mT));

    const auto t0 = std::chrono::steady_clock::now();
    ParabolicSolution sol = solve_parabolic(spec, tm);
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    int newton_total = 0, damped = 0;
    double max_res = 0.0;
    for (const auto& r : sol.reports) {
        newton_total += r.newton_iters;
        damped += r.damped ? 1 : 0;
        max_res = std::max(max_res, r.final_residual);
    }

    const std::string dir = resolve_out_dir(args.out);
    std::filesystem::create_directories(dir);
    write_csv_file(dir + "/run.csv", sol.u);
    write_csv_file(dir + "/final.csv", sol.u.slice(sol.u.slices() - 1));

    std::ostringstream sum;
    sum << "steps=" << tm.m << "\n";
    sum << "newton_total=" << newton_total << "\n";
    sum << "damped_steps=" << damped << "\n";
    sum << "max_step_residual=" << fmt(max_res) << "\n";
    sum << "sup_final=" << fmt(sup_norm(sol.u.slice(sol.u.slices() - 1))) << "\n";
    std::ofstream(dir + "/summary.txt") << sum.str();

    std::cout << sum.str();
    std::cout << "artifacts=" << dir << "/run.csv," << dir << "/final.csv\n";
    std::cout << "wall_ms=" << fmt(ms) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

int run_eigen(double p, double a, double b, int n, const std::string& method, double tol,
              const std::string& out) {
    if (method == "shooting") {
        std::cout << "method=shooting\n";
        std::cout << "lambda1=" << fmt(lambda1_shooting(p, b - a)) << "\n";
        return 0;
    }
    if (method != "rayleigh")
        fail(ErrKind::invalid_parameter, "eigen method must be rayleigh or shooting");
    const Grid g = make_interval_grid(a, b, n);
    const EigenResult er = lambda1_rayleigh(g, p, tol);
    const std::string dir = resolve_out_dir(out);
    std::filesystem::create_directories(dir);
    write_csv_file(dir + "/eigenfield.csv", er.eigenfield);
    std::cout << "method=rayleigh\n";
    std::cout << "lambda1=" << fmt(er.lambda1) << "\n";
    std::cout << "reference=" << fmt(lambda1_interval(p, b - a)) << "\n";
    std::cout << "artifacts=" << dir << "/eigenfield.csv\n";
    return 0;
}

// ---------------------------------------------------------------------------

int run_closed_form(const std::string& which, double p, int N, double C, double alpha, double t,
                    double t0, double a, double b, int n, const std::string& out) {
    if (which == "cauchy") {
        std::cout << "value=" << fmt(cauchy_solution(t, p)) << "\n";
        return 0;
    }
    const std::string dir = resolve_out_dir(out);
    std::filesystem::create_directories(dir);
    if (which == "barenblatt") {
        const BarenblattParams bp = make_barenblatt_params(p, N, C, alpha);
        const Grid g = make_interval_grid(a, b, n);
        const Field f = sample(g, [&](double x) { return barenblatt(x, t, bp); });
        write_csv_file(dir + "/barenblatt.csv", f);
        std::cout << "support_radius=" << fmt(barenblatt_support_radius(t, bp)) << "\n";
        std::cout << "artifacts=" << dir << "/barenblatt.csv\n";
        return 0;
    }
    if (which == "extinction") {
        const ExtinctionParams ep = make_extinction_params(p, t0, n);
        Field f = ep.profile;
        const double factor = extinction_time_factor(t, ep);
        for (int i = 0; i < f.size(); ++i) f[i] *= factor;
        write_csv_file(dir + "/extinction.csv", f);
        std::cout << "extinction_time=" << fmt(extinction_time(ep)) << "\n";
        std::cout << "sup=" << fmt(sup_norm(f)) << "\n";
        std::cout << "artifacts=" << dir << "/extinction.csv\n";
        return 0;
    }
    fail(ErrKind::invalid_parameter,
         "closed form must be barenblatt, extinction or cauchy, got '" + which + "'");
}

// ---------------------------------------------------------------------------

int run_saddle(double p, double lambda, double eps, double eps1, int n, const std::string& out) {
    const Grid g = make_interval_grid(-1.0, 1.0, n);
    const SaddleConstruction sc = build_saddle_construction(g, p, lambda, eps, eps1);
    const std::string dir = resolve_out_dir(out);
    std::filesystem::create_directories(dir);
    write_csv_file(dir + "/w0.csv", sc.w0);
    write_csv_file(dir + "/z.csv", sc.z);
    write_csv_file(dir + "/h.csv", sc.h_src);
    std::ofstream ztab(dir + "/zeta.csv");
    ztab << "t,zeta\n";
    for (int k = 0; k <= 12; ++k) {
        const double t = std::pow(10.0, -(1.0 + 0.5 * k));
        ztab << fmt(t) << "," << fmt(zeta(t, sc, p, lambda)) << "\n";
    }
    EnergySpec es{p, lambda, sc.h_src};
    std::cout << "m=" << fmt(sc.m) << "\n";
    std::cout << "energy_w0=" << fmt(energy(sc.w0, es)) << "\n";
    std::cout << "zeta_1e-2=" << fmt(zeta(1e-2, sc, p, lambda)) << "\n";
    std::cout << "zeta_1e-3=" << fmt(zeta(1e-3, sc, p, lambda)) << "\n";
    std::cout << "zeta_1e-4=" << fmt(zeta(1e-4, sc, p, lambda)) << "\n";
    std::cout << "artifacts=" << dir << "/w0.csv," << dir << "/z.csv," << dir << "/h.csv,"
              << dir << "/zeta.csv\n";
    return 0;
}

// ---------------------------------------------------------------------------

SpaceTimeField read_space_time_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrKind::config_error, "cannot open run file '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,x,value", 0) != 0)
        fail(ErrKind::config_error, "run file '" + path + "' is not a t,x,value CSV");
    std::vector<double> ts, xs, vals;
    std::vector<double> times;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const char* s = line.c_str();
        char* e1 = nullptr;
        const double t = std::strtod(s, &e1);
        if (e1 == s || *e1 != ',') fail(ErrKind::config_error, "bad row in '" + path + "': " + line);
        char* e2 = nullptr;
        const double x = std::strtod(e1 + 1, &e2);
        if (e2 == e1 + 1 || *e2 != ',')
            fail(ErrKind::config_error, "bad row in '" + path + "': " + line);
        char* e3 = nullptr;
        const double v = std::strtod(e2 + 1, &e3);
        if (e3 == e2 + 1) fail(ErrKind::config_error, "bad row in '" + path + "': " + line);
        ts.push_back(t);
        xs.push_back(x);
        vals.push_back(v);
        if (times.empty() || t != times.back()) times.push_back(t);
    }
    if (times.size() < 2) fail(ErrKind::config_error, "run file '" + path + "' has fewer than 2 slices");
    const size_t total = vals.size();
    if (total % times.size() != 0)
        fail(ErrKind::config_error, "run file '" + path + "' has ragged slices");
    const int nx = static_cast<int>(total / times.size());
    if (nx < 3) fail(ErrKind::config_error, "run file '" + path + "' has fewer than 3 nodes");
    const Grid g = make_interval_grid(xs[0], xs[nx - 1], nx);
    const TimeMesh tm = make_time_mesh(times.front(), times.back(),
                                       static_cast<int>(times.size()) - 1);
    SpaceTimeField stf = make_space_time_field(g, tm);
    for (size_t k = 0; k < total; ++k) stf.values[k] = vals[k];
    return stf;
}

int run_check(const std::string& principle, const std::string& run, const std::string& run2,
              double tol, int time_index, int burn_in) {
    const SpaceTimeField u = read_space_time_csv(run);
    const double eff_tol = tol >= 0.0 ? tol : default_tolerance(u.grid, 0.0);
    PrincipleReport rep;
    if (principle == "wmp") {
        rep = check_wmp(u, eff_tol);
    } else if (principle == "smp") {
        rep = check_smp(u, eff_tol);
    } else if (principle == "hopf") {
        const int k = time_index >= 0 ? time_index : u.slices() - 1;
        rep = check_hopf(u, k, eff_tol);
    } else if (principle == "wcp" || principle == "scp") {
        if (run2.empty())
            fail(ErrKind::invalid_parameter, "check " + principle + " needs --run2");
        const SpaceTimeField v = read_space_time_csv(run2);
        rep = principle == "wcp" ? check_wcp(u, v, eff_tol) : check_scp(u, v, eff_tol, burn_in);
    } else {
        fail(ErrKind::invalid_parameter,
             "principle must be wmp, smp, wcp, scp or hopf, got '" + principle + "'");
    }
    std::cout << "principle=" << to_string(rep.principle) << "\n";
    std::cout << "verdict=" << to_string(rep.verdict) << "\n";
    std::cout << "margin=" << fmt(rep.margin) << "\n";
    std::cout << "witness_time=" << rep.witness_time << "\n";
    std::cout << "witness_node=" << rep.witness_node << "\n";
    std::cout << "tolerance=" << fmt(rep.tolerance) << "\n";
    return rep.verdict == Verdict::violated ? 1 : 0;
}

// ---------------------------------------------------------------------------

int run_scenario_cmd(const std::string& name, int n, int mT, unsigned long seed,
                     const std::string& out) {
    ScenarioOverrides ov;
    ov.n = n;
    ov.mT = mT;
    ov.seed = seed;
    ov.out_dir = resolve_out_dir(out);
    const ScenarioResult res = run_scenario(name, ov);
    std::cout << "scenario=" << res.name << "\n";
    std::cout << "claim=" << res.claim << "\n";
    std::cout << "pass=" << (res.pass ? 1 : 0) << "\n";
    for (const auto& r : res.reports)
        std::cout << "report=" << to_string(r.principle) << " " << to_string(r.verdict)
                  << " margin=" << fmt(r.margin) << "\n";
    for (const auto& [k, v] : res.facts) std::cout << "fact." << k << "=" << v << "\n";
    for (const auto& a : res.artifacts) std::cout << "artifact=" << a << "\n";
    return res.pass ? 0 : 1;
}

int run_report(const std::string& in_dir, const std::string& csv_path) {
    std::vector<std::string> files;
    if (!std::filesystem::is_directory(in_dir))
        fail(ErrKind::config_error, "report input '" + in_dir + "' is not a directory");
    for (const auto& e : std::filesystem::directory_iterator(in_dir)) {
        if (e.is_regular_file() && e.path().extension() == ".result")
            files.push_back(e.path().string());
    }
    std::sort(files.begin(), files.end());
    if (files.empty())
        fail(ErrKind::config_error, "no .result files in '" + in_dir + "'");
    std::vector<ScenarioResult> results;
    bool all_pass = true;
    for (const auto& f : files) {
        std::ifstream is(f);
        std::ostringstream buf;
        buf << is.rdbuf();
        results.push_back(parse_result_text(buf.str()));
        all_pass = all_pass && results.back().pass;
    }
    const StatusTable table = status_report(results);
    std::cout << table.text << "\n";
    for (const auto& r : results)
        std::cout << "scenario " << r.name << ": " << (r.pass ? "pass" : "FAIL") << "\n";
    const std::string cp = csv_path.empty() ? in_dir + "/table.csv" : csv_path;
    std::ofstream(cp) << table.csv;
    std::cout << "csv=" << cp << "\n";
    std::cout << "matches_published=" << (table.matches ? 1 : 0) << "\n";
    return table.matches && all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-difference laboratory for the p-Laplacian evolution problem"};
    app.require_subcommand(1);

    // solve
    auto* c_solve = app.add_subcommand("solve", "march the evolution problem from a config file");
    std::string solve_config, solve_out;
    double f_p = 0, f_lambda = 0, f_T = 0, f_eps = 0, f_ntol = 0;
    long f_n = 0, f_mT = 0;
    c_solve->add_option("--config", solve_config, "key = value config file")->required();
    c_solve->add_option("--p", f_p, "override p");
    c_solve->add_option("--lambda", f_lambda, "override lambda");
    c_solve->add_option("--n", f_n, "override node count");
    c_solve->add_option("--T", f_T, "override final time");
    c_solve->add_option("--mT", f_mT, "override step count");
    c_solve->add_option("--eps-reg", f_eps, "override flux regularization");
    c_solve->add_option("--newton-tol", f_ntol, "override Newton tolerance");
    c_solve->add_option("--out", solve_out, "artifact directory (default $PLAP_OUT_DIR)");

    // eigen
    auto* c_eigen = app.add_subcommand("eigen", "first Dirichlet eigenvalue of -div(|u'|^{p-2}u')");
    double e_p = 2.0, e_a = -1.0, e_b = 1.0, e_tol = 1e-8;
    int e_n = 2048;
    std::string e_method = "rayleigh", e_out;
    c_eigen->add_option("--p", e_p, "exponent p > 1")->required();
    c_eigen->add_option("--a", e_a, "left endpoint");
    c_eigen->add_option("--b", e_b, "right endpoint");
    c_eigen->add_option("--n", e_n, "node count (rayleigh)");
    c_eigen->add_option("--method", e_method, "rayleigh or shooting");
    c_eigen->add_option("--tol", e_tol, "stagnation tolerance (rayleigh)");
    c_eigen->add_option("--out", e_out, "artifact directory");

    // closed-form
    auto* c_cf = app.add_subcommand("closed-form", "sample a reference solution");
    std::string cf_which, cf_out;
    double cf_p = 3.0, cf_C = 1.0, cf_alpha = 1.0, cf_t = 0.0, cf_t0 = 0.5, cf_a = -6.0,
           cf_b = 6.0;
    int cf_N = 1, cf_n = 2049;
    c_cf->add_option("--which", cf_which, "barenblatt, extinction or cauchy")->required();
    c_cf->add_option("--p", cf_p, "exponent p");
    c_cf->add_option("--N", cf_N, "ambient dimension (barenblatt)");
    c_cf->add_option("--C", cf_C, "mass constant (barenblatt)");
    c_cf->add_option("--alpha", cf_alpha, "time shift (barenblatt)");
    c_cf->add_option("--t", cf_t, "sample time");
    c_cf->add_option("--t0", cf_t0, "extinction parameter t0");
    c_cf->add_option("--a", cf_a, "left endpoint (barenblatt)");
    c_cf->add_option("--b", cf_b, "right endpoint (barenblatt)");
    c_cf->add_option("--n", cf_n, "node count");
    c_cf->add_option("--out", cf_out, "artifact directory");

    // saddle
    auto* c_saddle = app.add_subcommand("saddle", "explicit non-minimizing critical point");
    double s_p = 1.5, s_lambda = 1.0, s_eps = 0.15, s_eps1 = 0.4995;
    int s_n = 4097;
    std::string s_out;
    c_saddle->add_option("--p", s_p, "exponent 1 < p < 2");
    c_saddle->add_option("--lambda", s_lambda, "reaction coefficient > 0");
    c_saddle->add_option("--eps", s_eps, "bump plateau radius");
    c_saddle->add_option("--eps1", s_eps1, "core radius (bridge spans eps1..2*eps1)");
    c_saddle->add_option("--n", s_n, "node count");
    c_saddle->add_option("--out", s_out, "artifact directory");

    // check
    auto* c_check = app.add_subcommand("check", "run a principle predicate over saved runs");
    std::string k_principle, k_run, k_run2;
    double k_tol = -1.0;
    int k_time = -1, k_burn = 1;
    c_check->add_option("--principle", k_principle, "wmp, smp, wcp, scp or hopf")->required();
    c_check->add_option("--run", k_run, "t,x,value CSV of the run")->required();
    c_check->add_option("--run2", k_run2, "second run (wcp/scp)");
    c_check->add_option("--tol", k_tol, "positivity tolerance (default h^2)");
    c_check->add_option("--time-index", k_time, "slice for hopf (default last)");
    c_check->add_option("--burn-in", k_burn, "first slice for scp (default 1)");

    // scenario
    auto* c_scen = app.add_subcommand("scenario", "run a named experiment");
    std::string n_name, n_out;
    int n_n = -1, n_mT = -1;
    unsigned long n_seed = 0;
    c_scen->add_option("name", n_name, "scenario name")->required();
    c_scen->add_option("--n", n_n, "node-count override");
    c_scen->add_option("--mT", n_mT, "step-count override");
    c_scen->add_option("--seed", n_seed, "rng seed override");
    c_scen->add_option("--out", n_out, "artifact directory (default $PLAP_OUT_DIR)");

    // report
    auto* c_rep = app.add_subcommand("report", "fold scenario results into the status matrix");
    std::string r_in, r_csv;
    c_rep->add_option("--in", r_in, "directory holding .result files")->required();
    c_rep->add_option("--csv", r_csv, "CSV output path (default <in>/table.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (*c_solve) {
            SolveArgs args;
            args.config_path = solve_config;
            args.out = solve_out;
            if (c_solve->count("--p")) args.overrides.emplace_back("p", fmt(f_p));
            if (c_solve->count("--lambda")) args.overrides.emplace_back("lambda", fmt(f_lambda));
            if (c_solve->count("--n")) args.overrides.emplace_back("n", std::to_string(f_n));
            if (c_solve->count("--T")) args.overrides.emplace_back("T", fmt(f_T));
            if (c_solve->count("--mT")) args.overrides.emplace_back("mT", std::to_string(f_mT));
            if (c_solve->count("--eps-reg")) args.overrides.emplace_back("eps_reg", fmt(f_eps));
            if (c_solve->count("--newton-tol"))
                args.overrides.emplace_back("newton_tol", fmt(f_ntol));
            return run_solve(args);
        }
        if (*c_eigen) return run_eigen(e_p, e_a, e_b, e_n, e_method, e_tol, e_out);
        if (*c_cf)
            return run_closed_form(cf_which, cf_p, cf_N, cf_C, cf_alpha, cf_t, cf_t0, cf_a, cf_b,
                                   cf_n, cf_out);
        if (*c_saddle) return run_saddle(s_p, s_lambda, s_eps, s_eps1, s_n, s_out);
        if (*c_check) return run_check(k_principle, k_run, k_run2, k_tol, k_time, k_burn);
        if (*c_scen) return run_scenario_cmd(n_name, n_n, n_mT, n_seed, n_out);
        if (*c_rep) return run_report(r_in, r_csv);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "unexpected failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
