// Command-line front end: figure data as CSV (optionally SVG), the
// oracle-vs-closed-form verification suite, parameter sweeps, Monte Carlo
// runs and operating-point optimization.

#include <CLI11.hpp>

#include "iesim/engine.hpp"
#include "iesim/model.hpp"
#include "iesim/oracle.hpp"
#include "iesim/optimize.hpp"
#include "output.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace {

using iesim::EngineParams;
using iesim::OperatingPoint;
using iesim::tools::CsvWriter;
using iesim::tools::fmt;
using iesim::tools::Series;

struct RunConfig {
    double delta_e = 25.85;
    double t_sys = 300.0;
    double hbar2b = 25.85;
    double t_meter = 0.0;
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 42;
    int precision = 12;
    double tau_star_seconds = 0.0;
};

EngineParams params_of(const RunConfig& cfg) {
    return iesim::make_params(cfg.delta_e, cfg.t_sys, cfg.hbar2b, cfg.t_meter);
}

std::string out_path(const RunConfig& cfg, const char* fallback) {
    return cfg.out.empty() ? fallback : cfg.out;
}

bool want_csv(const RunConfig& cfg) { return cfg.format != "svg"; }
bool want_svg(const RunConfig& cfg) { return cfg.format != "csv"; }

// Power-like outputs stay per reduced time unless tau* is given in seconds.
double power_scale(const RunConfig& cfg) {
    return cfg.tau_star_seconds > 0.0 ? 1.0 / cfg.tau_star_seconds : 1.0;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = n > 1 ? lo + (hi - lo) * i / (n - 1) : lo;
    return v;
}

void print_config(const RunConfig& cfg) {
    std::printf("delta-e = %s\n", fmt(cfg.delta_e, 17).c_str());
    std::printf("t-sys = %s\n", fmt(cfg.t_sys, 17).c_str());
    std::printf("hbar2b = %s\n", fmt(cfg.hbar2b, 17).c_str());
    std::printf("t-meter = %s\n", fmt(cfg.t_meter, 17).c_str());
    std::printf("out = %s\n", cfg.out.c_str());
    std::printf("format = %s\n", cfg.format.c_str());
    std::printf("seed = %" PRIu64 "\n", cfg.seed);
    std::printf("precision = %d\n", cfg.precision);
    std::printf("tau-star-seconds = %s\n", fmt(cfg.tau_star_seconds, 17).c_str());
}

int cmd_cond_prob(const RunConfig& cfg, const std::vector<double>& t_bars) {
    const EngineParams params = params_of(cfg);
    const std::vector<double> u = linspace(-4.0, 4.0, 801);
    const std::string path = out_path(cfg, "cond_prob.csv");

    std::vector<Series> series;
    for (double t : t_bars) {
        series.push_back({"p0_tbar" + fmt(t, 6), {}});
        series.push_back({"p1_tbar" + fmt(t, 6), {}});
        for (double ui : u) {
            const OperatingPoint pt{t, 0.0};
            series[series.size() - 2].y.push_back(iesim::conditional_prob(0, ui, pt, params));
            series[series.size() - 1].y.push_back(iesim::conditional_prob(1, ui, pt, params));
        }
    }

    if (want_csv(cfg)) {
        CsvWriter csv(path, cfg.precision);
        std::vector<std::string> names{"u"};
        for (const auto& s : series) names.push_back(s.name);
        csv.header(names);
        for (std::size_t i = 0; i < u.size(); ++i) {
            std::vector<double> row{u[i]};
            for (const auto& s : series) row.push_back(s.y[i]);
            csv.row(row);
        }
    }
    if (want_svg(cfg))
        iesim::tools::write_line_chart(iesim::tools::svg_path_for(path),
                                       "conditional state probabilities vs meter outcome", u,
                                       series);
    return 0;
}

int cmd_info_cost(const RunConfig& cfg, double t_min, double t_max, int points,
                  const std::vector<double>& ratios) {
    const std::vector<double> t = linspace(t_min, t_max, points);
    const std::string path = out_path(cfg, "info_cost.csv");

    std::vector<Series> series;
    for (double r : ratios) {
        const EngineParams params = iesim::make_params(
            cfg.delta_e, cfg.delta_e / (iesim::k_boltzmann * r), cfg.hbar2b, cfg.t_meter);
        Series info{"info_gain_kB_ratio" + fmt(r, 6), {}};
        Series cost{"w_meas_mev_ratio" + fmt(r, 6), {}};
        for (double ti : t) {
            const OperatingPoint pt{ti, 0.0};
            info.y.push_back(iesim::info_gain(pt, params));
            cost.y.push_back(iesim::work_meas(pt, params));
        }
        series.push_back(std::move(info));
        series.push_back(std::move(cost));
    }

    if (want_csv(cfg)) {
        CsvWriter csv(path, cfg.precision);
        std::vector<std::string> names{"t_bar"};
        for (const auto& s : series) names.push_back(s.name);
        csv.header(names);
        for (std::size_t i = 0; i < t.size(); ++i) {
            std::vector<double> row{t[i]};
            for (const auto& s : series) row.push_back(s.y[i]);
            csv.row(row);
        }
    }
    if (want_svg(cfg))
        iesim::tools::write_line_chart(iesim::tools::svg_path_for(path),
                                       "information gain and measurement cost vs t_bar", t,
                                       series);
    return 0;
}

int cmd_perf(const RunConfig& cfg, const std::vector<double>& u_primes, double t_min, double t_max,
             int points) {
    const EngineParams params = params_of(cfg);
    const std::vector<double> t = linspace(t_min, t_max, points);
    const std::string path = out_path(cfg, "perf.csv");
    const double scale = power_scale(cfg);

    std::vector<Series> series;
    for (double up : u_primes) {
        Series pw{"power_mev_uprime" + fmt(up, 6), {}};
        Series eff{"efficiency_uprime" + fmt(up, 6), {}};
        for (double ti : t) {
            const OperatingPoint pt{ti, up};
            pw.y.push_back(scale * iesim::power(pt, params));
            eff.y.push_back(iesim::efficiency(pt, params));
        }
        series.push_back(std::move(pw));
        series.push_back(std::move(eff));
    }

    if (want_csv(cfg)) {
        CsvWriter csv(path, cfg.precision);
        std::vector<std::string> names{"t_bar"};
        for (const auto& s : series) names.push_back(s.name);
        csv.header(names);
        for (std::size_t i = 0; i < t.size(); ++i) {
            std::vector<double> row{t[i]};
            for (const auto& s : series) row.push_back(s.y[i]);
            csv.row(row);
        }
    }
    if (want_svg(cfg))
        iesim::tools::write_line_chart(iesim::tools::svg_path_for(path),
                                       "power and efficiency vs t_bar", t, series);
    return 0;
}

int cmd_heatmap(const RunConfig& cfg, int resolution, double t_min, double t_max, double u_min,
                double u_max) {
    const EngineParams params = params_of(cfg);
    const std::string path = out_path(cfg, "heatmap.csv");
    const double scale = power_scale(cfg);

    const iesim::SweepTable table = iesim::sweep(params, {t_min, t_max, resolution},
                                                 {u_min, u_max, resolution});
    const std::size_t nu = table.u_prime_axis.size();

    if (want_csv(cfg)) {
        CsvWriter csv(path, cfg.precision);
        csv.header({"t_bar", "u_prime", "product_mev"});
        for (std::size_t i = 0; i < table.t_bar_axis.size(); ++i)
            for (std::size_t j = 0; j < nu; ++j)
                csv.row({table.t_bar_axis[i], table.u_prime_axis[j],
                         scale * table.at(static_cast<int>(i), static_cast<int>(j)).product});
    }

    std::size_t best_i = 0, best_j = 0;
    double best = table.at(0, 0).product;
    for (std::size_t i = 0; i < table.t_bar_axis.size(); ++i)
        for (std::size_t j = 0; j < nu; ++j)
            if (table.at(static_cast<int>(i), static_cast<int>(j)).product > best) {
                best = table.at(static_cast<int>(i), static_cast<int>(j)).product;
                best_i = i;
                best_j = j;
            }
    std::printf("argmax: t_bar=%s u_prime=%s product_mev=%s\n",
                fmt(table.t_bar_axis[best_i], cfg.precision).c_str(),
                fmt(table.u_prime_axis[best_j], cfg.precision).c_str(),
                fmt(scale * best, cfg.precision).c_str());

    if (want_svg(cfg)) {
        std::vector<double> values;
        values.reserve(table.cells.size());
        for (std::size_t i = 0; i < table.t_bar_axis.size(); ++i)
            for (std::size_t j = 0; j < nu; ++j)
                values.push_back(scale * table.at(static_cast<int>(i), static_cast<int>(j)).product);
        iesim::tools::write_heatmap_svg(iesim::tools::svg_path_for(path),
                                        "efficiency x power over (t_bar, u_prime)",
                                        table.t_bar_axis, table.u_prime_axis, values);
    }
    return 0;
}

struct CheckLine {
    std::string name;
    double measured;
    double tol;
    bool pass() const { return measured <= tol; }
};

int cmd_verify(const RunConfig& cfg, long long mc_n, double mc_tol) {
    const EngineParams params = params_of(cfg);
    std::vector<CheckLine> checks;

    // split-operator branch marginals against the analytic densities
    double marginal_err = 0.0, norm_err = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
        const auto [b0, b1] = iesim::propagate(params, t);
        norm_err = std::max({norm_err, std::abs(b0.norm() - 1.0), std::abs(b1.norm() - 1.0)});
        const auto density = iesim::momentum_density(b1);
        for (std::size_t j = 0; j < density.size(); ++j) {
            const double u = b1.momentum(j);
            const double ref = iesim::kSqrt2OverPi * std::exp(-2.0 * (u + t) * (u + t));
            marginal_err = std::max(marginal_err, std::abs(density[j] - ref));
        }
    }
    checks.push_back({"branch-1 marginal vs analytic (max abs)", marginal_err, 1e-6});
    checks.push_back({"branch norm conservation", norm_err, 1e-10});

    double wm_rel = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
        const double closed = iesim::work_meas({t, 0.0}, params);
        const double oracle = iesim::oracle_work_meas(params, t);
        wm_rel = std::max(wm_rel, std::abs(closed - oracle) / std::abs(closed));
    }
    checks.push_back({"switching work closed form vs grid oracle (rel)", wm_rel, 1e-5});

    double null_err = 0.0;
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
        const double w = iesim::work_out({t, std::numeric_limits<double>::infinity()}, params);
        null_err = std::max(null_err, std::abs(w));
    }
    checks.push_back({"unconditional average gain is zero (meV)", null_err, 1e-10 * params.delta_e});

    double quad_err = 0.0;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            const OperatingPoint pt{5.0 * i / 19.0, -3.0 + 4.0 * j / 19.0};
            quad_err = std::max(quad_err, std::abs(iesim::work_out(pt, params) -
                                                   iesim::work_out_quadrature(pt, params)));
        }
    checks.push_back({"extracted work closed form vs quadrature (meV)", quad_err, 1e-9 * params.delta_e});

    const OperatingPoint pt{1.0, 0.0};
    const auto mc = iesim::mc_cycles(params, pt, mc_n, cfg.seed);
    const double analytic_w = iesim::work_out(pt, params);
    const double analytic_f = iesim::attempt_fraction(pt, params);
    const double analytic_i = iesim::info_gain(pt, params);
    auto mc_check = [&](const char* name, const iesim::McEstimate& est, double analytic) {
        const double tol = mc_tol > 0.0 ? mc_tol : 4.0 * est.std_error;
        checks.push_back({std::string("monte carlo ") + name, std::abs(est.mean - analytic), tol});
    };
    mc_check("w_out", mc.w_out, analytic_w);
    mc_check("attempt_fraction", mc.attempt_fraction, analytic_f);
    mc_check("info_gain", mc.info_gain, analytic_i);

    bool all_pass = true;
    for (const auto& c : checks) {
        all_pass = all_pass && c.pass();
        std::printf("[%s] %s: measured=%s tol=%s\n", c.pass() ? " ok " : "FAIL", c.name.c_str(),
                    fmt(c.measured, 6).c_str(), fmt(c.tol, 6).c_str());
    }
    std::printf("verify: %s\n", all_pass ? "all checks passed" : "FAILURES detected");
    return all_pass ? 0 : 1;
}

int cmd_optimize(const RunConfig& cfg, const std::string& objective_name,
                 const iesim::SearchBox& box) {
    const EngineParams params = params_of(cfg);
    const std::map<std::string, iesim::Objective> names{
        {"efficiency", iesim::Objective::efficiency},
        {"power", iesim::Objective::power},
        {"product", iesim::Objective::product}};
    const iesim::Objective objective = names.at(objective_name);
    const iesim::Optimum opt = iesim::maximize(params, objective, box);
    const double scale = objective == iesim::Objective::efficiency ? 1.0 : power_scale(cfg);

    std::printf("objective=%s t_bar_star=%s u_prime_star=%s value=%s boundary=%d converged=%d\n",
                objective_name.c_str(), fmt(opt.t_bar_star, cfg.precision).c_str(),
                fmt(opt.u_prime_star, cfg.precision).c_str(),
                fmt(scale * opt.value, cfg.precision).c_str(), opt.on_boundary ? 1 : 0,
                opt.converged ? 1 : 0);

    CsvWriter csv(out_path(cfg, "optimize.csv"), cfg.precision);
    csv.header({"t_bar_star", "u_prime_star", "value", "on_boundary", "converged"});
    csv.row({opt.t_bar_star, opt.u_prime_star, scale * opt.value, opt.on_boundary ? 1.0 : 0.0,
             opt.converged ? 1.0 : 0.0});
    return 0;
}

int cmd_mc(const RunConfig& cfg, double t_bar, double u_prime, long long n) {
    const EngineParams params = params_of(cfg);
    const OperatingPoint pt{t_bar, u_prime};
    const auto mc = iesim::mc_cycles(params, pt, n, cfg.seed);

    struct Row {
        const char* name;
        iesim::McEstimate est;
        double analytic;
    };
    const Row rows[3] = {{"w_out_mev", mc.w_out, iesim::work_out(pt, params)},
                         {"attempt_fraction", mc.attempt_fraction, iesim::attempt_fraction(pt, params)},
                         {"info_gain_kB", mc.info_gain, iesim::info_gain(pt, params)}};

    CsvWriter csv(out_path(cfg, "mc.csv"), cfg.precision);
    csv.header({"quantity", "mc_mean", "std_error", "analytic", "z_score"});
    for (const auto& r : rows) {
        const double z = r.est.std_error > 0.0 ? (r.est.mean - r.analytic) / r.est.std_error : 0.0;
        csv.named_row(r.name, {r.est.mean, r.est.std_error, r.analytic, z});
        std::printf("%s: mean=%s std_error=%s analytic=%s z=%s\n", r.name,
                    fmt(r.est.mean, cfg.precision).c_str(), fmt(r.est.std_error, 6).c_str(),
                    fmt(r.analytic, cfg.precision).c_str(), fmt(z, 4).c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    bool show_config = false;

    CLI::App app{"information-engine simulator: measurement-time thermodynamics of a "
                 "two-level system read out by a Gaussian meter"};
    app.require_subcommand(0, 1);
    app.fallthrough();
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.set_config("--config", "", "flat key=value config file; command-line flags override");
    app.add_option("--delta-e", cfg.delta_e, "level splitting (meV)")->capture_default_str();
    app.add_option("--t-sys", cfg.t_sys, "system temperature (K)")->capture_default_str();
    app.add_option("--hbar2b", cfg.hbar2b, "meter width parameter hbar^2*B (meV)")->capture_default_str();
    app.add_option("--t-meter", cfg.t_meter, "meter temperature (K)")->capture_default_str();
    app.add_option("--out", cfg.out, "output file (default depends on command)");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "svg", "both"}))
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--precision", cfg.precision, "CSV significant digits")->check(CLI::Range(1, 17))
        ->capture_default_str();
    app.add_option("--tau-star-seconds", cfg.tau_star_seconds,
                   "report power per physical second given tau* in seconds")->capture_default_str();
    app.add_flag("--print-config", show_config, "echo every effective configuration value");

    auto* cond = app.add_subcommand("cond-prob", "conditional state probabilities vs meter outcome");
    std::vector<double> cp_tbars{0.0, 0.5};
    cond->add_option("--t-bar", cp_tbars, "reduced measurement times");

    auto* info = app.add_subcommand("info-cost", "information gain and switching work vs t_bar");
    double ic_tmin = 0.0, ic_tmax = 10.0;
    int ic_points = 201;
    std::vector<double> ic_ratios{0.5, 1.0, 2.0};
    info->add_option("--t-min", ic_tmin, "first t_bar")->capture_default_str();
    info->add_option("--t-max", ic_tmax, "last t_bar")->capture_default_str();
    info->add_option("--points", ic_points, "number of rows")->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    info->add_option("--ratios", ic_ratios, "delta_e/(k_B T_S) ratios (T_S adjusted per column)");

    auto* perf = app.add_subcommand("perf", "power and efficiency vs t_bar");
    std::vector<double> pf_uprimes{0.0, -0.5, -1.0, -1.5};
    double pf_tmin = 0.01, pf_tmax = 10.0;
    int pf_points = 500;
    perf->add_option("--u-prime", pf_uprimes, "extraction thresholds");
    perf->add_option("--t-min", pf_tmin, "first t_bar")->capture_default_str();
    perf->add_option("--t-max", pf_tmax, "last t_bar")->capture_default_str();
    perf->add_option("--points", pf_points, "number of rows")->check(CLI::Range(2, 1000000))
        ->capture_default_str();

    auto* heat = app.add_subcommand("heatmap", "efficiency x power over (t_bar, u_prime)");
    int hm_res = 101;
    double hm_tmin = 0.05, hm_tmax = 5.0, hm_umin = -3.0, hm_umax = 1.0;
    heat->add_option("--resolution", hm_res, "grid points per axis")->check(CLI::Range(2, 4096))
        ->capture_default_str();
    heat->add_option("--t-min", hm_tmin)->capture_default_str();
    heat->add_option("--t-max", hm_tmax)->capture_default_str();
    heat->add_option("--u-min", hm_umin)->capture_default_str();
    heat->add_option("--u-max", hm_umax)->capture_default_str();

    auto* verify = app.add_subcommand("verify", "oracle-vs-closed-form verification suite");
    long long vf_mc_n = 100000;
    double vf_mc_tol = 0.0;
    verify->add_option("--mc-n", vf_mc_n, "Monte Carlo samples")->check(CLI::Range(1000LL, 100000000LL))
        ->capture_default_str();
    verify->add_option("--mc-tol", vf_mc_tol,
                       "absolute Monte Carlo tolerance override (0 = 4 standard errors)")
        ->capture_default_str();

    auto* opt = app.add_subcommand("optimize", "maximize efficiency, power or their product");
    std::string op_objective = "product";
    iesim::SearchBox op_box;
    opt->add_option("--objective", op_objective, "objective")
        ->check(CLI::IsMember({"efficiency", "power", "product"}))->capture_default_str();
    opt->add_option("--t-lo", op_box.t_lo)->capture_default_str();
    opt->add_option("--t-hi", op_box.t_hi)->capture_default_str();
    opt->add_option("--u-lo", op_box.u_lo)->capture_default_str();
    opt->add_option("--u-hi", op_box.u_hi)->capture_default_str();

    auto* mc = app.add_subcommand("mc", "Monte Carlo cycle estimates vs analytic values");
    double mc_tbar = 1.0, mc_uprime = 0.0;
    long long mc_n = 1000000;
    mc->add_option("--t-bar", mc_tbar)->capture_default_str();
    mc->add_option("--u-prime", mc_uprime)->capture_default_str();
    mc->add_option("--n", mc_n, "samples")->check(CLI::Range(1000LL, 10000000000LL))
        ->capture_default_str();

    for (auto* sub : {cond, info, perf, heat, verify, opt, mc}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (show_config) print_config(cfg);

    try {
        if (cond->parsed()) return cmd_cond_prob(cfg, cp_tbars);
        if (info->parsed()) return cmd_info_cost(cfg, ic_tmin, ic_tmax, ic_points, ic_ratios);
        if (perf->parsed()) return cmd_perf(cfg, pf_uprimes, pf_tmin, pf_tmax, pf_points);
        if (heat->parsed()) return cmd_heatmap(cfg, hm_res, hm_tmin, hm_tmax, hm_umin, hm_umax);
        if (verify->parsed()) return cmd_verify(cfg, vf_mc_n, vf_mc_tol);
        if (opt->parsed()) return cmd_optimize(cfg, op_objective, op_box);
        if (mc->parsed()) return cmd_mc(cfg, mc_tbar, mc_uprime, mc_n);
    } catch (const iesim::tools::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    if (show_config) return 0;
    std::fprintf(stderr, "%s\n", app.help().c_str());
    return 2;
}
