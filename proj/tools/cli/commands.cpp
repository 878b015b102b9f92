#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include <khess/barenblatt.hpp>
#include <khess/errors.hpp>
#include <khess/evolution.hpp>
#include <khess/export.hpp>
#include <khess/fit.hpp>
#include <khess/stationary.hpp>

#include "acceptance.hpp"
#include "config.hpp"

namespace khess::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

#ifndef KHESS_VERSION
#define KHESS_VERSION "unknown"
#endif

std::string cfg_value(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// manifest.json echoes the resolved config and lists the outputs; run.cfg
// replays the job with `khess <command> --config run.cfg`.
void write_manifest(const fs::path& dir, const std::string& command, const Json& config,
                    const std::vector<std::string>& outputs, const Json& extra = Json::object()) {
    fs::create_directories(dir);
    std::ostringstream cfg;
    std::string rerun = "khess " + command;
    for (const auto& [key, value] : config.items()) {
        if (value.is_null()) continue;
        cfg << key << " = " << cfg_value(value) << "\n";
        if (value.is_boolean()) {
            if (value.get<bool>()) rerun += " --" + key;
        } else {
            rerun += " --" + key + " " + cfg_value(value);
        }
    }
    std::ofstream(dir / "run.cfg") << cfg.str();

    Json m;
    m["command"] = command;
    m["version"] = KHESS_VERSION;
    m["config"] = config;
    m["rerun"] = rerun;
    m["config_file"] = "run.cfg";
    m["outputs"] = outputs;
    for (const auto& [key, value] : extra.items()) m[key] = value;
    std::ofstream(dir / "manifest.json") << m.dump(2) << "\n";
}

void write_json(const fs::path& path, const Json& j) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

void require(bool ok, const std::string& message) {
    if (!ok) throw UsageError(message);
}

ProblemParams checked_params(int n, int k, bool needs_k2, const std::string& what) {
    require(n >= 2 && n <= 60, "--n must lie in [2, 60]");
    require(k >= 1 && k <= n, "--k must satisfy 1 <= k <= n");
    require(!needs_k2 || k >= 2, what + " requires k >= 2");
    return make_params(n, k);
}

struct InitSelector {
    std::string kind;
    double value = 0.0;
    std::string path;
};

InitSelector parse_init(const std::string& text) {
    const auto colon = text.find(':');
    InitSelector sel;
    sel.kind = text.substr(0, colon);
    if (colon == std::string::npos) return sel;
    const std::string arg = text.substr(colon + 1);
    if (sel.kind == "file") {
        require(!arg.empty(), "--init file: needs a path");
        sel.path = arg;
        return sel;
    }
    std::size_t used = 0;
    try {
        sel.value = std::stod(arg, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    require(used == arg.size() && used > 0, "--init " + text + ": '" + arg + "' is not a number");
    return sel;
}

// Two-column CSV `r,<name>` on a uniform grid r_i = i R / m.
RadialProfile read_profile_csv(const fs::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open initial data file " + path.string());
    std::string line;
    std::getline(in, line);
    std::vector<double> r;
    std::vector<double> u;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        require(comma != std::string::npos, path.string() + ":" + std::to_string(row) + ": expected two columns");
        try {
            r.push_back(std::stod(line.substr(0, comma)));
            u.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw UsageError(path.string() + ":" + std::to_string(row) + ": unparsable number");
        }
    }
    require(r.size() >= 5, path.string() + ": need at least 5 rows");
    const int m = static_cast<int>(r.size()) - 1;
    const RadialGrid g(r.back(), m);
    for (int i = 0; i <= m; ++i) {
        require(std::abs(r[static_cast<std::size_t>(i)] - g.node(i)) <= 1e-9 * g.radius(),
                path.string() + ": radii are not the uniform grid i R / m");
    }
    return RadialProfile(g, u);
}

std::string sci(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------------------

int run_stationary(const StationaryConfig& cfg) {
    const ProblemParams p = checked_params(cfg.n, cfg.k, true, "the stationary problem");
    require(cfg.radius > 0.0 && std::isfinite(cfg.radius), "--radius must be positive");
    require(cfg.cells >= 4, "--cells must be at least 4");
    require(cfg.ode_steps >= 1000, "--ode-steps must be at least 1000");
    require(!cfg.tol || *cfg.tol > 0.0, "--tol must be positive");
    const fs::path dir = resolve_output_dir(cfg.out, "khess_stationary");

    const RadialGrid g(cfg.radius, cfg.cells);
    const StationarySolution th = profile_on_ball(cfg.radius, p, g, cfg.ode_steps);
    const BoundReport ball = check_ball_bound(th, p);
    const BoundReport torsion = check_torsion_bound(th, p);
    const double tol = cfg.tol.value_or(1e-6 * std::max(1.0, std::pow(2048.0 / cfg.cells, 2)) *
                                        std::max(1.0, th.sup_norm));
    const bool residual_ok = th.residual <= tol;
    const bool bounds_ok = ball.satisfied && torsion.satisfied;

    write_profile_csv(dir / "theta.csv", th.profile);
    Json report;
    report["n"] = cfg.n;
    report["k"] = cfg.k;
    report["radius"] = cfg.radius;
    report["cells"] = cfg.cells;
    report["residual"] = th.residual;
    report["tolerance"] = tol;
    report["center_value"] = th.center_value;
    report["boundary_slope"] = th.boundary_slope;
    report["sup_norm"] = th.sup_norm;
    report["unit_crossing_radius"] = th.unit_crossing_radius;
    report["ball_bound"] = {{"value", ball.bound_value}, {"satisfied", ball.satisfied}};
    report["torsion_bound"] = {{"value", torsion.bound_value}, {"satisfied", torsion.satisfied}};
    report["passed"] = residual_ok && bounds_ok;
    write_json(dir / "report.json", report);

    Json config;
    config["n"] = cfg.n;
    config["k"] = cfg.k;
    config["radius"] = cfg.radius;
    config["cells"] = cfg.cells;
    config["ode-steps"] = cfg.ode_steps;
    config["tol"] = optional_json(cfg.tol);
    write_manifest(dir, "stationary", config, {"theta.csv", "report.json"}, {{"resolved_tolerance", tol}});

    std::cout << "residual      " << sci(th.residual) << " (tol " << sci(tol) << ")\n"
              << "sup|theta|    " << sci(th.sup_norm) << "\n"
              << "ball bound    " << sci(ball.bound_value) << (ball.satisfied ? " ok" : " VIOLATED") << "\n"
              << "torsion bound " << sci(torsion.bound_value) << (torsion.satisfied ? " ok" : " VIOLATED") << "\n"
              << "output        " << dir.string() << "\n";
    if (!bounds_ok) return kInvariant;
    return residual_ok ? kOk : kTolerance;
}

// ---------------------------------------------------------------------------

int run_evolve(const EvolveConfig& in) {
    EvolveConfig cfg = in;
    const ProblemParams p = checked_params(cfg.n, cfg.k, true, "the evolution problem");
    require(cfg.t_end > 0.0 && std::isfinite(cfg.t_end), "--t-end must be positive");
    require(cfg.cfl > 0.0 && cfg.cfl <= 1.0, "--cfl must lie in (0, 1]");
    require(cfg.ode_steps >= 1000, "--ode-steps must be at least 1000");
    require(cfg.samples_per_octave >= 1, "--samples-per-octave must be at least 1");
    require(cfg.fit_t_min > 0.0 && cfg.fit_t_max > cfg.fit_t_min, "need 0 < --fit-t-min < --fit-t-max");
    require(!cfg.sandwich_tol || *cfg.sandwich_tol >= 0.0, "--sandwich-tol must be non-negative");

    const InitSelector sel = parse_init(cfg.init);
    std::optional<RadialProfile> from_file;
    if (sel.kind == "file") {
        from_file = read_profile_csv(sel.path);
        cfg.radius = from_file->grid().radius();
        cfg.cells = from_file->grid().cells();
    } else if (sel.kind == "barenblatt") {
        throw UsageError("--init barenblatt:C is whole-space data; use `khess barenblatt --evolve-free --init barenblatt:C`");
    } else if (sel.kind == "scaled") {
        require(sel.value > 0.0, "--init scaled:s needs s > 0");
    } else if (sel.kind == "perturbed") {
        require(sel.value >= 0.0 && sel.value < 1.0, "--init perturbed:a needs 0 <= a < 1");
    } else {
        require(sel.kind == "theta", "--init must be theta | scaled:s | perturbed:a | file:path");
    }
    require(cfg.radius > 0.0 && std::isfinite(cfg.radius), "--radius must be positive");
    require(cfg.cells >= 4, "--cells must be at least 4");
    const fs::path dir = resolve_output_dir(cfg.out, "khess_evolve");

    const RadialGrid g(cfg.radius, cfg.cells);
    const StationarySolution th = profile_on_ball(cfg.radius, p, g, cfg.ode_steps);
    RadialProfile u0 = th.profile;
    std::optional<PerturbedData> perturbed;
    if (sel.kind == "scaled") {
        u0 = th.profile.scaled(std::pow(sel.value, -1.0 / (cfg.k - 1)));
    } else if (sel.kind == "perturbed") {
        perturbed = perturbed_initial_data(th, p, sel.value);
        u0 = perturbed->profile;
    } else if (from_file) {
        u0 = *from_file;
    }

    EvolveOptions opts;
    opts.cfl_safety = cfg.cfl;
    opts.fit_t_min = cfg.fit_t_min;
    opts.fit_t_max = cfg.fit_t_max;
    const DecayDiagnostics d =
        evolve_to(u0, cfg.t_end, p, th, geometric_sample_times(cfg.t_end, cfg.samples_per_octave), opts);

    double sandwich = 0.0;
    double bracket = 0.0;
    double worst_theta_ratio = 0.0;
    bool decreasing = true;
    for (std::size_t i = 0; i < d.samples.size(); ++i) {
        const DecaySample& s = d.samples[i];
        sandwich = std::max(sandwich, s.sandwich_violation);
        bracket = std::max(bracket, s.bracket_violation);
        if (i > 0 && !(s.mass < d.samples[i - 1].mass)) decreasing = false;
        if (s.t > 0.0) {
            const double gap = s.sup_gap * std::pow(1.0 + s.t, -1.0 / (cfg.k - 1));
            worst_theta_ratio = std::max(worst_theta_ratio, gap / (s.t * th.residual));
        }
    }
    const double sandwich_tol =
        cfg.sandwich_tol.value_or(1e-9 + (cfg.k - 1) * std::max(d.envelope.T_lower0, 1.0) * th.residual);
    const bool sandwich_ok = sandwich <= sandwich_tol;
    const bool theta_ok = sel.kind != "theta" || worst_theta_ratio <= 10.0;

    write_profile_csv(dir / "theta.csv", th.profile);
    write_profile_csv(dir / "initial.csv", u0, "u");
    write_profile_csv(dir / "final.csv", d.final_profile, "u");
    write_decay_csv(dir / "decay.csv", d.samples);

    Json report;
    report["fitted_slope"] = d.fitted_slope;
    report["fitted_points"] = d.fitted_points;
    report["fit_window"] = {d.fit_t_min, d.fit_t_max};
    report["theta_residual"] = th.residual;
    report["envelope"] = {{"ratio_max", d.envelope.ratio_max}, {"ratio_min", d.envelope.ratio_min},
                          {"T_lower0", d.envelope.T_lower0},   {"T_upper0", d.envelope.T_upper0},
                          {"C1", d.envelope.C1},               {"C2", d.envelope.C2}};
    report["max_sandwich_violation"] = sandwich;
    report["sandwich_tolerance"] = sandwich_tol;
    report["max_bracket_violation"] = bracket;
    report["mass_strictly_decreasing"] = decreasing;
    if (perturbed) report["perturbation_amplitude"] = perturbed->amplitude;
    if (sel.kind == "theta") report["max_gap_over_discretization_estimate"] = worst_theta_ratio;
    report["final_sup_gap"] = d.samples.back().sup_gap;
    report["steps"] = d.steps;
    report["min_dt"] = d.min_dt;
    report["max_dt"] = d.max_dt;
    report["passed"] = sandwich_ok && decreasing && theta_ok;
    write_json(dir / "report.json", report);

    Json config;
    config["n"] = cfg.n;
    config["k"] = cfg.k;
    config["radius"] = cfg.radius;
    config["cells"] = cfg.cells;
    config["t-end"] = cfg.t_end;
    config["cfl"] = cfg.cfl;
    config["init"] = cfg.init;
    config["ode-steps"] = cfg.ode_steps;
    config["samples-per-octave"] = cfg.samples_per_octave;
    config["fit-t-min"] = cfg.fit_t_min;
    config["fit-t-max"] = cfg.fit_t_max;
    config["sandwich-tol"] = optional_json(cfg.sandwich_tol);
    write_manifest(dir, "evolve", config, {"theta.csv", "initial.csv", "final.csv", "decay.csv", "report.json"},
                   {{"resolved_sandwich_tolerance", sandwich_tol}});

    std::cout << "fitted slope  " << sci(d.fitted_slope) << " over " << d.fitted_points << " samples\n"
              << "final gap     " << sci(d.samples.back().sup_gap) << "\n"
              << "sandwich      " << sci(sandwich) << " (tol " << sci(sandwich_tol) << ")"
              << (sandwich_ok ? " ok" : " VIOLATED") << "\n"
              << "mass          " << (decreasing ? "strictly decreasing" : "NOT DECREASING") << "\n";
    if (perturbed) std::cout << "amplitude     " << perturbed->amplitude << "\n";
    if (sel.kind == "theta") std::cout << "gap/estimate  " << sci(worst_theta_ratio) << "\n";
    std::cout << "steps         " << d.steps << "\n"
              << "output        " << dir.string() << "\n";
    if (!sandwich_ok || !decreasing) return kInvariant;
    return theta_ok ? kOk : kTolerance;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> spaced(double lo, double hi, int count) {
    std::vector<double> r;
    for (int i = 0; i < count; ++i) r.push_back(lo + (hi - lo) * i / (count - 1));
    return r;
}

void write_free_csv(const fs::path& path, const FreeEvolutionReport& rep) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "t,rescaled_gap,mass,support_radius,barenblatt_support\n";
    for (const FreeEvolutionSample& s : rep.samples) {
        out << format_double(s.t) << ',' << format_double(s.rescaled_gap) << ',' << format_double(s.mass) << ','
            << format_double(s.support_radius) << ',' << format_double(s.barenblatt_support) << '\n';
    }
}

int run_gaussian(const BarenblattConfig& cfg, const fs::path& dir) {
    const double C = cfg.C.value_or(1.0);
    const std::vector<double> xs = spaced(0.05, 8.0, 100);
    const double residual = gaussian_profile_ode_residual(C, xs);
    const bool ok = residual <= 1e-10;
    const RadialGrid g(8.0, 512);
    write_profile_csv(dir / "profile.csv", RadialProfile::sample(g, [C](double x) { return gaussian_profile(x, C); }));
    Json report;
    report["C"] = C;
    report["residual_max"] = residual;
    report["passed"] = ok;
    write_json(dir / "report.json", report);
    Json config;
    config["n"] = cfg.n;
    config["k"] = cfg.k;
    config["C"] = C;
    write_manifest(dir, "barenblatt", config, {"profile.csv", "report.json"});
    std::cout << "gaussian profile residual " << sci(residual) << (ok ? " ok" : " FAILED") << "\n";
    return ok ? kOk : kTolerance;
}

}  // namespace

int run_barenblatt(const BarenblattConfig& cfg) {
    const ProblemParams p = checked_params(cfg.n, cfg.k, false, "");
    require(!(cfg.C && cfg.mass), "--C and --mass are mutually exclusive");
    require(!cfg.C || (*cfg.C > 0.0 && std::isfinite(*cfg.C)), "--C must be positive");
    require(!cfg.mass || (*cfg.mass > 0.0 && std::isfinite(*cfg.mass)), "--mass must be positive");
    require(cfg.quad_points >= 1000, "--quad-points must be at least 1000");
    require(cfg.cells >= 4, "--cells must be at least 4");
    require(cfg.t_end > 1.0, "--t-end must exceed the start time 1");
    const InitSelector sel = parse_init(cfg.init);
    require(sel.kind == "polynomial" || sel.kind == "barenblatt" || sel.kind == "file",
            "--init must be polynomial | barenblatt:C | file:path");
    require(sel.kind != "barenblatt" || sel.value > 0.0, "--init barenblatt:C needs C > 0");
    const fs::path dir = resolve_output_dir(cfg.out, "khess_barenblatt");
    if (cfg.k == 1) {
        require(!cfg.mass && !cfg.evolve_free, "k = 1 supports only the Gaussian profile check");
        return run_gaussian(cfg, dir);
    }

    const BarenblattSolution b = cfg.mass ? BarenblattSolution::from_mass(p, *cfg.mass)
                                          : BarenblattSolution(p, cfg.C.value_or(1.0));
    const double edge = b.profile_edge();
    const double ode = profile_ode_residual(b, spaced(0.02 * edge, 0.98 * edge, 100));
    const double radial = radial_profile_fd_residual(b, spaced(0.05 * edge, 0.9 * edge, 40));
    const std::vector<double> pde_times{0.5, 1.0, 4.0};
    const double pde = pde_fd_residual(b, pde_times, spaced(0.05 * b.support_radius(0.5), 0.85 * b.support_radius(0.5), 12));

    std::vector<double> ts;
    std::vector<double> supports;
    std::vector<double> masses;
    double forms = 0.0;
    for (double t : {1e-2, 1e-1, 1.0, 1e1, 1e2}) {
        ts.push_back(t);
        supports.push_back(b.support_radius(t));
        forms = std::max(forms, std::abs(b.support_radius_bracket_form(t) / supports.back() - 1.0));
        masses.push_back(mass_of(b, 20000, t));
    }
    const auto [mlo, mhi] = std::minmax_element(masses.begin(), masses.end());
    const double mass_variation = (*mhi - *mlo) / b.mass();
    const double quad_mass = mass_of(b, cfg.quad_points);
    const double roundtrip = std::abs(r0_of_mass(quad_mass, p) / b.r0() - 1.0);
    const double slope = fit_loglog(ts, supports).slope;

    Json checks;
    checks["profile_ode"] = {{"value", ode}, {"tol", 1e-10}, {"passed", ode <= 1e-10}};
    checks["radial_fd"] = {{"value", radial}, {"tol", 1e-6}, {"passed", radial <= 1e-6}};
    checks["pde_fd"] = {{"value", pde}, {"tol", 1e-6}, {"passed", pde <= 1e-6}};
    checks["mass_in_t"] = {{"value", mass_variation}, {"tol", 1e-8}, {"passed", mass_variation <= 1e-8}};
    checks["r0_roundtrip"] = {{"value", roundtrip}, {"tol", 1e-6}, {"passed", roundtrip <= 1e-6}};
    checks["support_slope"] = {{"value", std::abs(slope - p.beta)}, {"tol", 1e-12}, {"passed", std::abs(slope - p.beta) <= 1e-12}};
    checks["support_forms"] = {{"value", forms}, {"tol", 1e-12}, {"passed", forms <= 1e-12}};
    bool all_ok = true;
    for (const auto& [name, c] : checks.items()) all_ok = all_ok && c["passed"].get<bool>();

    Json report;
    report["C"] = b.C();
    report["M"] = b.mass();
    report["r0"] = b.r0();
    report["residual_max"] = std::max({ode, radial, pde});
    report["mass_drift"] = mass_variation;
    report["support_slope"] = slope;
    report["beta"] = p.beta;
    report["alpha"] = p.alpha;
    report["gamma"] = p.gamma_value();
    report["quadrature_mass"] = quad_mass;
    report["r0_of_mass"] = r0_of_mass(quad_mass, p);
    report["r0_of_mass_uncorrected"] = r0_of_mass_uncorrected(quad_mass, p);
    if (cfg.mass) {
        report["requested_mass"] = *cfg.mass;
        report["mass_roundtrip_error"] = std::abs(quad_mass / *cfg.mass - 1.0);
    }
    report["checks"] = checks;

    std::vector<std::string> outputs{"profile.csv", "trajectory.csv", "report.json"};
    write_profile_csv(dir / "profile.csv", RadialProfile::sample(RadialGrid(edge, 512), [&](double x) { return b.profile(x); }));
    std::vector<TrajectoryRow> rows;
    const RadialGrid rg(b.support_radius(100.0), 128);
    for (double t : ts) {
        for (int i = 0; i <= rg.cells(); ++i) rows.push_back({t, rg.node(i), b.value(t, rg.node(i))});
    }
    write_trajectory_csv(dir / "trajectory.csv", rows);

    if (cfg.evolve_free) {
        const RadialGrid g(1.6 * 1.3 * b.support_radius(cfg.t_end), cfg.cells);
        RadialProfile u0 = RadialProfile::zeros(g);
        if (sel.kind == "file") {
            u0 = read_profile_csv(sel.path);
        } else if (sel.kind == "barenblatt") {
            const BarenblattSolution data(p, sel.value);
            u0 = RadialProfile::sample(g, [&](double r) { return data.value(1.0, r); });
        } else {
            u0 = RadialProfile::sample(g, [edge](double r) {
                const double q = r / edge;
                return q < 1.0 ? std::pow(1.0 - q * q, 3) * (1.0 + q * q) : 0.0;
            });
        }
        const FreeEvolutionReport rep = evolve_free(u0, 1.0, cfg.t_end, p);
        write_free_csv(dir / "free_evolution.csv", rep);
        outputs.push_back("free_evolution.csv");
        report["free_evolution"] = {{"informational", true},
                                    {"initial_mass", rep.initial_mass},
                                    {"mass_drift", rep.mass_drift},
                                    {"mass_drift_trapezoid", rep.mass_drift_trapezoid},
                                    {"gap_initial", rep.samples.front().rescaled_gap},
                                    {"gap_final", rep.samples.back().rescaled_gap},
                                    {"gap_decreased", rep.gap_decreased},
                                    {"steps", rep.steps}};
        std::cout << "free run      gap " << sci(rep.samples.front().rescaled_gap) << " -> "
                  << sci(rep.samples.back().rescaled_gap) << (rep.gap_decreased ? " (decreasing)" : " (not monotone)")
                  << ", mass drift " << sci(rep.mass_drift) << "\n";
    }
    report["passed"] = all_ok;
    write_json(dir / "report.json", report);

    Json config;
    config["n"] = cfg.n;
    config["k"] = cfg.k;
    config["C"] = optional_json(cfg.C);
    config["mass"] = optional_json(cfg.mass);
    config["quad-points"] = cfg.quad_points;
    config["evolve-free"] = cfg.evolve_free;
    config["cells"] = cfg.cells;
    config["t-end"] = cfg.t_end;
    config["init"] = cfg.init;
    write_manifest(dir, "barenblatt", config, outputs);

    std::cout << "C             " << sci(b.C()) << "\n"
              << "mass          " << sci(b.mass()) << " (quadrature " << sci(quad_mass) << ")\n"
              << "r0            " << sci(b.r0()) << ", round trip " << sci(roundtrip) << "\n";
    if (cfg.mass) std::cout << "requested M   " << sci(*cfg.mass) << ", relative error " << sci(std::abs(quad_mass / *cfg.mass - 1.0)) << "\n";
    for (const auto& [name, c] : checks.items()) {
        std::printf("%-14s%s %s\n", name.c_str(), sci(c["value"].get<double>()).c_str(), c["passed"].get<bool>() ? "ok" : "FAILED");
    }
    std::cout << "output        " << dir.string() << "\n";
    return all_ok ? kOk : kTolerance;
}

// ---------------------------------------------------------------------------

int run_verify_all(const VerifyConfig& cfg) {
    require(cfg.jobs >= 1, "--jobs must be at least 1");
    for (int id : cfg.only) require(id >= 1 && id <= 11, "--only ids must lie in 1..11");
    const fs::path dir = resolve_output_dir(cfg.out, "khess_verify");

    acceptance::SuiteOptions opts;
    opts.fast = cfg.fast;
    opts.jobs = cfg.jobs;
    const auto results = acceptance::run_suite(opts, cfg.only);

    fs::create_directories(dir);
    std::ofstream csv(dir / "summary.csv");
    csv << "id,gating,passed,cases_passed,cases_total,title\n";
    Json criteria = Json::array();
    for (const auto& r : results) {
        std::cout << acceptance::summary_line(r) << "\n";
        int passed = 0;
        int total = 0;
        Json cases = Json::array();
        for (const auto& o : r.outcomes) {
            const char* tag = o.informational ? "info" : (o.passed ? "ok  " : "FAIL");
            std::printf("        %s %-22s %s\n", tag, o.label.c_str(), o.detail.c_str());
            cases.push_back({{"label", o.label}, {"passed", o.passed}, {"informational", o.informational}, {"detail", o.detail}});
            if (o.informational) continue;
            ++total;
            if (o.passed) ++passed;
        }
        for (const auto& e : r.errors) std::printf("        error %s\n", e.c_str());
        csv << r.id << ',' << (r.gating ? 1 : 0) << ',' << (r.passed ? 1 : 0) << ',' << passed << ',' << total << ",\""
            << r.title << "\"\n";
        criteria.push_back({{"id", r.id},
                            {"title", r.title},
                            {"gating", r.gating},
                            {"passed", r.passed},
                            {"settings", r.settings},
                            {"cases", cases},
                            {"errors", r.errors}});
    }
    const int failed = acceptance::failure_count(results);
    std::cout << failed << " of " << results.size() << " criteria failed\n";

    Json config;
    config["fast"] = cfg.fast;
    // jobs changes only wall time, so it is left out of the replay config.
    std::string only;
    for (int id : cfg.only) only += (only.empty() ? "" : ",") + std::to_string(id);
    config["only"] = only.empty() ? Json(nullptr) : Json(only);
    write_manifest(dir, "verify-all", config, {"summary.csv", "manifest.json"},
                   {{"failed", failed}, {"criteria", criteria}});
    return failed;
}

}  // namespace khess::cli
