#include "dp/admissible.hpp"
#include "dp/dynamics.hpp"
#include "dp/functionals.hpp"
#include "dp/grid.hpp"
#include "dp/helmholtz.hpp"
#include "dp/io.hpp"
#include "dp/stability.hpp"
#include "dp/waves.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitAborted = 3;

struct RunConfig {
    int grid_n = 8192;
    double half_width = 30.0;
    double speed = 1.0;
    std::vector<double> eps;
    double t_end = 5.0;
    unsigned long long seed = 1;
    fs::path out = "out";
    int jobs = 1;
    int trials = 100;
};

json config_json(const RunConfig& c) {
    return json{{"grid_n", c.grid_n},     {"half_width", c.half_width}, {"speed", c.speed},
                {"eps", c.eps},           {"t_end", c.t_end},           {"seed", c.seed},
                {"out", c.out.string()},  {"jobs", c.jobs},             {"trials", c.trials}};
}

/// Flat JSON file supplies defaults; flags given on the command line win.
void load_config_file(const fs::path& path, RunConfig& c, const CLI::App& cmd) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    json doc = json::parse(in);
    auto absent = [&](const std::string& flag) {
        auto* opt = cmd.get_option_no_throw(flag);
        return opt == nullptr || opt->count() == 0;
    };
    if (doc.contains("grid_n") && absent("--grid-n")) c.grid_n = doc["grid_n"].get<int>();
    if (doc.contains("half_width") && absent("--half-width"))
        c.half_width = doc["half_width"].get<double>();
    if (doc.contains("speed") && absent("--speed")) c.speed = doc["speed"].get<double>();
    if (doc.contains("eps") && absent("--eps")) c.eps = doc["eps"].get<std::vector<double>>();
    if (doc.contains("t_end") && absent("--t-end")) c.t_end = doc["t_end"].get<double>();
    if (doc.contains("seed") && absent("--seed"))
        c.seed = doc["seed"].get<unsigned long long>();
    if (doc.contains("out") && absent("--out")) c.out = doc["out"].get<std::string>();
    if (doc.contains("jobs") && absent("--jobs")) c.jobs = doc["jobs"].get<int>();
    if (doc.contains("trials") && absent("--trials")) c.trials = doc["trials"].get<int>();
}

dp::UniformGrid make_grid_checked(const RunConfig& c) {
    if (c.speed <= 0.0) throw std::invalid_argument("stability requires c>0");
    for (double e : c.eps)
        if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("eps values must lie in (0,1)");
    if (c.t_end <= 0.0) throw std::invalid_argument("t_end must be > 0");
    if (c.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    return dp::UniformGrid::make(c.half_width, c.grid_n);
}

void prepare_out_dir(const RunConfig& c) {
    fs::create_directories(c.out);
    std::ofstream f(c.out / "config.json");
    f << config_json(c).dump(2) << '\n';
}

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

json checks_json(const std::vector<Check>& checks) {
    json arr = json::array();
    for (const auto& ck : checks)
        arr.push_back({{"name", ck.name}, {"pass", ck.pass}, {"detail", ck.detail}});
    return arr;
}

int cmd_landmarks(const RunConfig& cfg) {
    make_grid_checked(cfg);
    prepare_out_dir(cfg);
    json doc = dp::io::landmarks_json(dp::landmark_constants(cfg.speed));
    std::ofstream f(cfg.out / "landmarks.json");
    f << doc.dump(2) << '\n';
    std::cout << doc.dump(2) << '\n';
    return kExitPass;
}

int cmd_verify_lemmas(const RunConfig& cfg) {
    const dp::UniformGrid g = make_grid_checked(cfg);
    prepare_out_dir(cfg);
    const double c = cfg.speed;
    std::vector<Check> checks;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({name, pass, detail});
    };
    auto guarded = [&](const std::string& name, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            add(name, false, std::string("exception: ") + e.what());
        }
    };

    dp::GridFunction phi = dp::sample_peakon(g, c, 0.0);

    guarded("PP1_profile_distances", [&] {
        auto d = dp::ck_distances(phi, c, 0.0);
        const bool ok = d.c0_u <= 1e-3 * c && d.c0_v <= 1e-5 * c && d.c1_v <= 1e-4 * c &&
                        d.c2_v <= 1e-3 * c;
        add("PP1_profile_distances", ok,
            "c0_u=" + dp::io::fmt17(d.c0_u) + " c0_v=" + dp::io::fmt17(d.c0_v) +
                " c1_v=" + dp::io::fmt17(d.c1_v) + " c2_v=" + dp::io::fmt17(d.c2_v));
    });

    guarded("P2_quadratic_identity_peakon", [&] {
        auto mp = dp::locate_max(dp::inv_helmholtz(dp::HelmholtzKind::four, phi));
        const double r = dp::quadratic_identity_residual(phi, c, mp.xi);
        add("P2_quadratic_identity_peakon", r <= 1e-3 * c * c, "residual=" + dp::io::fmt17(r));
    });

    guarded("P4_P5_degeneracy_at_peakon", [&] {
        auto rep = dp::stability_certificate(phi, c);
        auto prof = dp::helmholtz_profile(phi);
        auto gfun = dp::build_g(prof.v, prof.vx, prof.vxx, rep.xi);
        auto hfun = dp::build_h(prof.v, prof.vx, prof.vxx, rep.xi);
        double gmax = 0.0, hdev = 0.0;
        for (int j = 0; j < g.n_points; ++j) {
            gmax = std::max(gmax, std::abs(gfun.values[j]));
            hdev = std::max(hdev, std::abs(hfun.values[j] - 3.0 * phi.values[j]));
        }
        const bool ok = gmax <= 1e-3 * c && hdev <= 1e-3 * c &&
                        rep.g_identity_residual <= 1e-3 * c * c &&
                        rep.h_identity_residual <= 1e-3 * c * c * c &&
                        std::abs(rep.h_sup_margin) <= 1e-3 * c;
        add("P4_P5_degeneracy_at_peakon", ok,
            "max|g|=" + dp::io::fmt17(gmax) + " max|h-3phi|=" + dp::io::fmt17(hdev) +
                " h_margin=" + dp::io::fmt17(rep.h_sup_margin));
    });

    guarded("P33_cubic_closed_form", [&] {
        const double exact =
            dp::cubic_inequality_value(c * c / 3.0, 2.0 * c * c * c / 3.0, c / 6.0);
        const double fac = dp::peakon_cubic_factored(c / 6.0, c);
        const bool ok = std::abs(exact) <= 1e-12 && std::abs(fac) <= 1e-12;
        add("P33_cubic_closed_form", ok, "value=" + dp::io::fmt17(exact));
    });

    guarded("peakon_certificate", [&] {
        auto rep = dp::stability_certificate(phi, c);
        std::string why;
        for (const auto& r : rep.fail_reasons) why += r + "; ";
        add("peakon_certificate", rep.pass, why.empty() ? "all margins within tolerance" : why);
    });

    int ens_pass = 0, ens_total = 0;
    double worst_g = 0.0, worst_h = 0.0, worst_quad = 0.0, worst_cubic = -1e300;
    double worst_cone = 1e300;
    std::string ens_detail;
    guarded("ensemble_certificates", [&] {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> eps_draw(0.01, 0.05);
        for (int t = 0; t < cfg.trials; ++t) {
            auto recipe = dp::random_recipe(rng);
            const double eps = eps_draw(rng);
            auto pert = dp::make_perturbed_peakon(g, c, eps, recipe);
            auto rep = dp::stability_certificate(pert.u0, c);
            auto cone = dp::cone_check(pert.u0);
            ++ens_total;
            if (rep.pass) ++ens_pass;
            else if (ens_detail.empty() && !rep.fail_reasons.empty())
                ens_detail = "first failure: " + rep.fail_reasons.front();
            worst_g = std::max(worst_g, rep.g_identity_residual);
            worst_h = std::max(worst_h, rep.h_identity_residual);
            worst_quad = std::max(worst_quad, rep.quadratic_identity_res);
            worst_cubic = std::max(worst_cubic, rep.cubic_value);
            worst_cone = std::min({worst_cone, cone.u_slope.margin, cone.v_slope.margin,
                                   cone.u_vs_6v.margin});
        }
        add("ensemble_certificates", ens_pass == ens_total,
            std::to_string(ens_pass) + "/" + std::to_string(ens_total) + " pass; " + ens_detail);
        add("ensemble_cone_margins", worst_cone >= -1e-6 * c,
            "worst=" + dp::io::fmt17(worst_cone));
        add("ensemble_g_identity", worst_g <= 1e-3 * c * c, "worst=" + dp::io::fmt17(worst_g));
        add("ensemble_h_identity", worst_h <= 1e-3 * c * c * c,
            "worst=" + dp::io::fmt17(worst_h));
        add("ensemble_quadratic_identity", worst_quad <= 1e-3 * c * c,
            "worst=" + dp::io::fmt17(worst_quad));
        add("ensemble_cubic_inequality", worst_cubic <= 1e-3 * c * c * c,
            "worst=" + dp::io::fmt17(worst_cubic));
    });

    bool all = true;
    for (const auto& ck : checks) all = all && ck.pass;
    json report{{"config", config_json(cfg)},
                {"g_identity_residual", worst_g},
                {"checks", checks_json(checks)},
                {"pass", all}};
    std::ofstream f(cfg.out / "lemmas_report.json");
    f << report.dump(2) << '\n';
    for (const auto& ck : checks)
        std::cout << (ck.pass ? "PASS " : "FAIL ") << ck.name << "  " << ck.detail << '\n';
    return all ? kExitPass : kExitChecksFailed;
}

dp::MeasureData initial_measure(const dp::UniformGrid& g, const RunConfig& cfg) {
    if (cfg.eps.empty())
        return dp::MeasureData{{{0.0, 2.0 * cfg.speed}}, dp::GridFunction::zero(g)};
    std::mt19937_64 rng(cfg.seed);
    auto pert = dp::make_perturbed_peakon(g, cfg.speed, cfg.eps.front(), dp::random_recipe(rng));
    return pert.y0;
}

int cmd_simulate(const RunConfig& cfg) {
    const dp::UniformGrid g = make_grid_checked(cfg);
    prepare_out_dir(cfg);
    dp::EvolutionConfig ecfg;
    ecfg.t_end = cfg.t_end;
    auto trace = dp::evolve(initial_measure(g, cfg), cfg.speed, ecfg);
    dp::io::write_trace_csv(trace, cfg.out / "trace.csv");

    std::vector<double> e_drift(trace.times.size()), f_drift(trace.times.size());
    for (size_t i = 0; i < trace.times.size(); ++i) {
        e_drift[i] = trace.E_series[i] / trace.E_series[0] - 1.0;
        f_drift[i] = trace.F_series[i] / trace.F_series[0] - 1.0;
    }
    dp::io::write_svg_plot(
        cfg.out / "trace.svg", "conservation drift and shape distance",
        {{"E drift", "#1f77b4", trace.times, e_drift},
         {"F drift", "#2ca02c", trace.times, f_drift},
         {"h_distance", "#d62728", trace.times, trace.h_distance_series}});
    if (trace.aborted) {
        std::cerr << "blow-up detected; partial trace written\n";
        return kExitAborted;
    }
    std::cout << "trace written: " << (cfg.out / "trace.csv").string() << '\n';
    return kExitPass;
}

struct SweepPoint {
    double eps = 0.0;
    double achieved_distance = 0.0;
    double sup_delta = 0.0;
    double sup_h_distance = 0.0;
    bool out_of_hypothesis = false;
    bool aborted = false;
};

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int cmd_stability_sweep(const RunConfig& cfg) {
    if (cfg.eps.size() < 3) throw std::invalid_argument("need >=3 values for slope fit");
    const dp::UniformGrid g = make_grid_checked(cfg);
    prepare_out_dir(cfg);

    std::vector<double> eps = cfg.eps;
    std::sort(eps.begin(), eps.end());
    std::vector<SweepPoint> points(eps.size());
    std::mutex next_mutex;
    size_t next = 0;
    auto worker = [&] {
        for (;;) {
            size_t i;
            {
                std::lock_guard<std::mutex> lock(next_mutex);
                if (next >= eps.size()) return;
                i = next++;
            }
            // One independent stream per point, so the schedule cannot change
            // the result.
            std::mt19937_64 rng(cfg.seed + i);
            auto pert = dp::make_perturbed_peakon(g, cfg.speed, eps[i], dp::random_recipe(rng));
            dp::EvolutionConfig ecfg;
            ecfg.t_end = cfg.t_end;
            auto trace = dp::evolve(pert.y0, cfg.speed, ecfg);
            SweepPoint p;
            p.eps = eps[i];
            p.achieved_distance = pert.achieved_distance;
            for (size_t k = 0; k < trace.times.size(); ++k) {
                p.sup_delta = std::max(p.sup_delta, std::abs(trace.delta_series[k]));
                p.sup_h_distance = std::max(p.sup_h_distance, trace.h_distance_series[k]);
            }
            p.out_of_hypothesis = eps[i] > 0.1;
            p.aborted = trace.aborted;
            points[i] = p;
        }
    };
    {
        std::vector<std::thread> pool;
        const int n_threads = std::min<int>(cfg.jobs, static_cast<int>(eps.size()));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const auto& p : points)
        if (p.aborted) {
            std::cerr << "blow-up at eps=" << p.eps << '\n';
            return kExitAborted;
        }

    std::vector<double> xs, deltas, dists;
    for (const auto& p : points) {
        xs.push_back(p.eps);
        deltas.push_back(p.sup_delta);
        dists.push_back(p.sup_h_distance);
    }
    const double slope_delta = loglog_slope(xs, deltas);
    const double slope_distance = loglog_slope(xs, dists);
    const bool pass = slope_delta >= 0.8 && slope_distance >= 0.4;

    {
        std::ofstream f(cfg.out / "sweep.csv");
        f << "eps,achieved_distance,sup_delta,sup_h_distance,out_of_hypothesis\n";
        for (const auto& p : points)
            f << dp::io::fmt17(p.eps) << ',' << dp::io::fmt17(p.achieved_distance) << ','
              << dp::io::fmt17(p.sup_delta) << ',' << dp::io::fmt17(p.sup_h_distance) << ','
              << (p.out_of_hypothesis ? 1 : 0) << '\n';
    }
    json doc{{"config", config_json(cfg)},
             {"slope_delta", slope_delta},
             {"slope_distance", slope_distance},
             {"pass", pass},
             {"points", json::array()}};
    for (const auto& p : points)
        doc["points"].push_back({{"eps", p.eps},
                                 {"achieved_distance", p.achieved_distance},
                                 {"sup_delta", p.sup_delta},
                                 {"sup_h_distance", p.sup_h_distance},
                                 {"out_of_hypothesis", p.out_of_hypothesis}});
    {
        std::ofstream f(cfg.out / "sweep.json");
        f << doc.dump(2) << '\n';
    }
    std::cout << "slope(delta vs eps)=" << slope_delta
              << " slope(distance vs eps)=" << slope_distance << (pass ? "  PASS" : "  FAIL")
              << '\n';
    for (const auto& p : points)
        if (p.out_of_hypothesis)
            std::cout << "note: eps=" << p.eps << " exceeds the hypothesis range eps0=0.1\n";
    return pass ? kExitPass : kExitChecksFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"peakon stability laboratory"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::vector<CLI::App*> cmds;
    for (const char* name : {"verify-lemmas", "simulate", "stability-sweep", "landmarks"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--grid-n", cfg.grid_n, "number of grid points (power of two)");
        sub->add_option("--half-width", cfg.half_width, "domain half width L");
        sub->add_option("--speed", cfg.speed, "reference wave speed c");
        sub->add_option("--eps", cfg.eps, "perturbation size(s)");
        sub->add_option("--t-end", cfg.t_end, "integration horizon");
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--out", cfg.out, "output directory");
        sub->add_option("--jobs", cfg.jobs, "max concurrent sweep points");
        sub->add_option("--trials", cfg.trials, "ensemble size for verify-lemmas");
        sub->add_option("--config", config_path, "flat JSON config; flags override");
        cmds.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);
    CLI::App* active = app.get_subcommands().front();

    try {
        if (!config_path.empty()) load_config_file(config_path, cfg, *active);
        const std::string name = active->get_name();
        if (name == "landmarks") return cmd_landmarks(cfg);
        if (name == "verify-lemmas") return cmd_verify_lemmas(cfg);
        if (name == "simulate") {
            if (cfg.t_end == 5.0 && active->get_option("--t-end")->count() == 0) cfg.t_end = 5.0;
            return cmd_simulate(cfg);
        }
        if (cfg.t_end == 5.0 && active->get_option("--t-end")->count() == 0) cfg.t_end = 10.0;
        return cmd_stability_sweep(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadConfig;
    }
}
