#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nslab/besov.hpp"
#include "nslab/config.hpp"
#include "nslab/heat.hpp"
#include "nslab/io.hpp"
#include "nslab/ops.hpp"
#include "nslab/parallel.hpp"
#include "nslab/picard.hpp"
#include "nslab/scenario.hpp"
#include "nslab/stokes.hpp"
#include "nslab/verify.hpp"

namespace {

using namespace nslab;

struct CommonFlags {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    int threads = 0;
    int level = 0;
};

Config load_config(const CommonFlags& fl) {
    if (fl.config_path.empty()) return Config::from_string("");
    return Config::load(fl.config_path);
}

void ensure_out(const std::string& dir) { std::filesystem::create_directories(dir); }

ScenarioSpec scenario_from(const Config& cfg, const CommonFlags& fl) {
    ScenarioSpec spec = cfg.scenario();
    if (fl.seed != 1) spec.seed = fl.seed;
    return spec;
}

void write_csv_series(const std::string& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    out << header << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << "\n";
    }
}

double level_refine(int level) { return std::pow(1.5, std::max(level, 0)); }

int cmd_heat(const CommonFlags& fl) {
    Config cfg = load_config(fl);
    ScenarioSpec spec = scenario_from(cfg, fl);
    HalfSpaceGrid grid = spec.make_grid(level_refine(fl.level));
    TimeGrid times = spec.make_times();
    VectorField u0 = generate_initial_data(spec, grid);
    auto profile = heat_decay_profile(u0, times, spec.p0, spec.alpha);
    HeatApplication mid{times[times.size() / 2], ReflectionKind::Odd,
                        heat_convolve(u0, times[times.size() / 2], ReflectionKind::Odd)};
    ensure_out(fl.out_dir);
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < times.size(); ++k) {
        double w = std::pow(times[k], 0.5 * spec.alpha);
        rows.push_back({times[k], profile[k] / w, profile[k]});
    }
    write_csv_series(fl.out_dir + "/heat_profile.csv", "t,norm,weighted", rows);
    write_field(mid.result, fl.out_dir + "/heat_mid.field");
    std::cout << "wrote " << fl.out_dir << "/heat_profile.csv\n";
    return 0;
}

int cmd_besov(const CommonFlags& fl) {
    Config cfg = load_config(fl);
    ScenarioSpec spec = scenario_from(cfg, fl);
    HalfSpaceGrid grid = spec.make_grid(level_refine(fl.level));
    VectorField u0 = generate_initial_data(spec, grid);
    BesovParams params{-1.0 + double(grid.dim()) / spec.p0, spec.p0,
                       std::numeric_limits<double>::infinity()};
    NormReport rep = besov_norm(u0, params);
    nlohmann::json j;
    j["value"] = rep.value;
    j["argmax_band"] = rep.argmax_band;
    j["truncation_flag"] = rep.truncation_flag;
    auto bands = nlohmann::json::array();
    for (const auto& b : rep.bands) bands.push_back({{"j", b.j}, {"contribution", b.value}});
    j["bands"] = bands;
    j["params"] = {{"s", params.s}, {"p", params.p}, {"q", "inf"}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_stokes(const CommonFlags& fl) {
    Config cfg = load_config(fl);
    ScenarioSpec spec = scenario_from(cfg, fl);
    HalfSpaceGrid grid = spec.make_grid(level_refine(fl.level));
    TimeGrid times = spec.make_times();
    VectorField u0 = generate_initial_data(spec, grid);
    StokesProblem prob(std::move(u0), times);
    StokesSolution sol = solve_homogeneous(prob, true);
    ensure_out(fl.out_dir);
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < times.size(); ++k)
        rows.push_back({times[k], sol.diagnostics[k].trace_rel, sol.diagnostics[k].div_rel});
    write_csv_series(fl.out_dir + "/stokes_diagnostics.csv", "t,trace_rel,div_rel", rows);
    write_trajectory(sol.velocity, fl.out_dir + "/stokes_velocity", 0);
    std::cout << "wrote " << fl.out_dir << "/stokes_diagnostics.csv\n";
    return 0;
}

int cmd_ns_iterate(const CommonFlags& fl) {
    Config cfg = load_config(fl);
    ScenarioSpec spec = scenario_from(cfg, fl);
    if (!cfg.has("scenario.name") && !cfg.has("scenario.family"))
        spec = ScenarioSpec::preset("picard");
    HalfSpaceGrid grid = spec.make_grid();
    TimeGrid times = spec.make_times();

    double p0 = cfg.get_double("picard.p0", spec.p0);
    double p = cfg.get_double("picard.p", spec.p);
    PicardOptions opts;
    opts.m_max = int(cfg.get_int("picard.m_max", 12));
    opts.stop_tol = cfg.get_double("picard.stop_tol", 1e-7);
    opts.rule.panels = std::size_t(cfg.get_int("picard.panels", 24));

    auto u0s = ensemble_u0(grid, 2, spec.seed + 100);
    auto gs = ensemble_tensors(grid, 2, spec.seed + 200);
    SmallnessBudget budget = calibrate_budget(u0s, gs, times, p0, p, opts.rule);

    VectorField u0 = generate_initial_data(spec, grid);
    // aim ||u^1|| at M0/2
    Trajectory probe(grid, times);
    {
        StokesProblem hp(u0, times);
        probe = solve_homogeneous(hp).velocity;
    }
    double unit = weighted_sup_norm(probe, budget.beta0(grid.dim()), p0);
    if (unit > 0.0) u0.scale(std::min(0.7 * budget.M0, 0.05 / (2.0 * budget.c5_hat)) / unit);

    IterationState state = iterate(u0, budget, times, opts);
    ensure_out(fl.out_dir);
    std::vector<std::vector<double>> rows;
    for (const auto& r : state.history)
        rows.push_back({double(r.m), r.norm_lp0, r.norm_besov, r.diff_lp0, r.diff_besov,
                        r.ratio_lp0, r.ratio_besov});
    write_csv_series(fl.out_dir + "/picard_history.csv",
                     "m,norm_lp0,norm_besov,diff_lp0,diff_besov,ratio_lp0,ratio_besov", rows);
    if (state.current) write_trajectory(*state.current, fl.out_dir + "/picard_final", state.m);

    nlohmann::json j;
    j["m"] = state.m;
    j["converged"] = state.converged;
    j["aborted"] = state.aborted;
    j["abort_reason"] = state.abort_reason;
    j["budget"] = {{"c0", budget.c0_hat}, {"c1", budget.c1_hat}, {"c5", budget.c5_hat},
                   {"c6", budget.c6_hat}, {"M0", budget.M0}};
    DecayFit fit = decay_fit(state, p0);
    j["decay_slope"] = fit.slope;
    j["decay_reliable"] = fit.reliable;
    std::ofstream(fl.out_dir + "/picard_summary.json") << j.dump(2) << "\n";
    std::cout << j.dump(2) << "\n";
    return state.aborted ? 1 : 0;
}

int cmd_verify(const CommonFlags& fl, bool quick, const std::vector<int>& only) {
    Config cfg = load_config(fl);
    VerifyOptions opts;
    opts.seed = fl.seed != 1 ? fl.seed : cfg.get_u64("verify.seed", fl.seed);
    opts.level = fl.level != 0 ? fl.level : int(cfg.get_int("verify.level", fl.level));
    opts.out_dir = fl.out_dir;
    opts.quick = quick;
    opts.only = only;
    ensure_out(fl.out_dir);
    VerificationReport rep = run_verification_suite(opts);
    for (const auto& c : rep.criteria)
        std::printf("criterion %2d %-28s %s  (%.1fs)\n", c.index, c.name.c_str(),
                    c.pass ? "PASS" : "FAIL", c.runtime_sec);
    rep.write_csv(fl.out_dir + "/report.csv");
    rep.write_json(fl.out_dir + "/report.json");
    if (!rep.all_pass()) {
        for (const auto& r : rep.records)
            if (!r.pass) std::cerr << "failed check: " << r.check << "\n";
        return 1;
    }
    return 0;
}

int cmd_report(const CommonFlags& fl, const std::string& in_path) {
    std::ifstream in(in_path);
    if (!in) {
        std::cerr << "report: cannot open " << in_path << "\n";
        return 2;
    }
    nlohmann::json j;
    in >> j;
    ensure_out(fl.out_dir);
    std::ofstream csv(fl.out_dir + "/report.csv");
    csv << "check,anchor,measured,constant,level,pass\n";
    for (const auto& r : j["records"])
        csv << r["check"].get<std::string>() << ',' << r["anchor"].get<std::string>() << ','
            << r["measured"].get<double>() << ',' << r["constant"].get<double>() << ','
            << r["level"].get<int>() << ',' << (r["pass"].get<bool>() ? 1 : 0) << '\n';
    bool all = j.value("all_pass", false);
    std::cout << (all ? "all checks pass" : "some checks fail") << "\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-space Stokes / Navier-Stokes mild-solution laboratory"};
    app.require_subcommand(1);

    CommonFlags fl;
    app.add_option("--config", fl.config_path, "configuration file (flat key = value)");
    app.add_option("--out", fl.out_dir, "output directory");
    app.add_option("--seed", fl.seed, "ensemble seed");
    app.add_option("--threads", fl.threads, "worker threads (0 = hardware)");
    app.add_option("--level", fl.level, "refinement level");

    auto* heat = app.add_subcommand("heat", "heat-kernel decay profile for a scenario");
    auto* besov = app.add_subcommand("besov", "Besov norm report (JSON) for a scenario");
    auto* stokes = app.add_subcommand("stokes", "solve the linear problem, dump diagnostics");
    auto* nsit = app.add_subcommand("ns-iterate", "run the nonlinear iteration");
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    bool quick = false;
    verify->add_flag("--quick", quick, "smaller ensembles");
    std::vector<int> only;
    verify->add_option("--only", only, "criterion indices to run (default: all)");
    auto* report = app.add_subcommand("report", "re-render a report.json");
    std::string report_in = "report.json";
    report->add_option("input", report_in, "report.json path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (fl.threads > 0) nslab::set_thread_count(fl.threads);
    // configuration may also pin the worker count
    if (!fl.config_path.empty()) {
        try {
            nslab::Config pre = nslab::Config::load(fl.config_path);
            if (fl.threads == 0 && pre.has("threads"))
                nslab::set_thread_count(int(pre.get_int("threads", 0)));
        } catch (...) {
        }
    }

    try {
        if (heat->parsed()) return cmd_heat(fl);
        if (besov->parsed()) return cmd_besov(fl);
        if (stokes->parsed()) return cmd_stokes(fl);
        if (nsit->parsed()) return cmd_ns_iterate(fl);
        if (verify->parsed()) return cmd_verify(fl, quick, only);
        if (report->parsed()) return cmd_report(fl, report_in);
    } catch (const nslab::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
