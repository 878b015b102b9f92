#include <algorithm>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include <khess/errors.hpp>

#include "commands.hpp"
#include "config.hpp"

using namespace khess::cli;

namespace {

CLI::Option* add_config(CLI::App* sub, std::string& path) {
    return sub->add_option("--config", path, "key = value file; command-line flags override it")
        ->check(CLI::ExistingFile);
}

void add_out(CLI::App* sub, std::string& out) {
    sub->add_option("--out", out, "Output directory, resolved against $KHESS_OUTPUT_ROOT (default: working directory)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"khess: radial k-Hessian evolution experiments"};
    app.require_subcommand(1);

    std::string config_path;

    StationaryConfig st;
    CLI::App* stationary = app.add_subcommand("stationary", "Shoot the eigenfunction theta on a ball and check its bounds");
    stationary->add_option("--n", st.n, "Dimension")->capture_default_str();
    stationary->add_option("--k", st.k, "Hessian order (>= 2)")->capture_default_str();
    stationary->add_option("--radius", st.radius, "Ball radius R")->capture_default_str();
    stationary->add_option("--cells", st.cells, "Grid cells m")->capture_default_str();
    stationary->add_option("--ode-steps", st.ode_steps, "RK4 steps of the shooting run")->capture_default_str();
    stationary->add_option("--tol", st.tol, "Residual tolerance (default 1e-6 (2048/m)^2 max(1, sup|theta|))");
    add_out(stationary, st.out);
    add_config(stationary, config_path);

    EvolveConfig ev;
    CLI::App* evolve = app.add_subcommand("evolve", "March u_t = S_k(D^2 u) on a ball and measure the decay");
    evolve->add_option("--n", ev.n, "Dimension")->capture_default_str();
    evolve->add_option("--k", ev.k, "Hessian order (>= 2)")->capture_default_str();
    evolve->add_option("--radius", ev.radius, "Ball radius R")->capture_default_str();
    evolve->add_option("--cells", ev.cells, "Grid cells m")->capture_default_str();
    evolve->add_option("--t-end", ev.t_end, "Final time")->capture_default_str();
    evolve->add_option("--cfl", ev.cfl, "Safety factor on the explicit step")->capture_default_str();
    evolve->add_option("--init", ev.init,
                       "theta | scaled:s (u0 = s^{-1/(k-1)} theta) | perturbed:a | file:path (CSV r,u)")
        ->capture_default_str();
    evolve->add_option("--ode-steps", ev.ode_steps, "RK4 steps of the shooting run")->capture_default_str();
    evolve->add_option("--samples-per-octave", ev.samples_per_octave, "Sample times per doubling of t")->capture_default_str();
    evolve->add_option("--fit-t-min", ev.fit_t_min, "Start of the slope fit window")->capture_default_str();
    evolve->add_option("--fit-t-max", ev.fit_t_max, "End of the slope fit window")->capture_default_str();
    evolve->add_option("--sandwich-tol", ev.sandwich_tol,
                       "Allowed barrier violation (default 1e-9 + (k-1) max(T_lower0,1) residual(theta))");
    add_out(evolve, ev.out);
    add_config(evolve, config_path);

    BarenblattConfig ba;
    CLI::App* barenblatt = app.add_subcommand("barenblatt", "Check the self-similar family U_C on R^n");
    barenblatt->add_option("--n", ba.n, "Dimension")->capture_default_str();
    barenblatt->add_option("--k", ba.k, "Hessian order")->capture_default_str();
    barenblatt->add_option("--C", ba.C, "Family constant C > 0 (default 1)");
    barenblatt->add_option("--mass", ba.mass, "Select the member with this mass instead of --C");
    barenblatt->add_option("--quad-points", ba.quad_points, "Quadrature points for the r0(M) round trip")->capture_default_str();
    barenblatt->add_flag("--evolve-free", ba.evolve_free, "Also run the exploratory whole-space march from t = 1");
    barenblatt->add_option("--cells", ba.cells, "Grid cells of the whole-space run")->capture_default_str();
    barenblatt->add_option("--t-end", ba.t_end, "Final time of the whole-space run")->capture_default_str();
    barenblatt->add_option("--init", ba.init, "polynomial | barenblatt:C | file:path")->capture_default_str();
    add_out(barenblatt, ba.out);
    add_config(barenblatt, config_path);

    VerifyConfig va;
    va.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    CLI::App* verify = app.add_subcommand("verify-all", "Run the acceptance matrix; exit code = failed criteria");
    verify->add_flag("--fast", va.fast, "Coarser grids with looser tolerances (recorded in the manifest)");
    verify->add_option("--jobs", va.jobs, "Worker threads")->capture_default_str();
    verify->add_option("--only", va.only, "Comma-separated criterion ids")->delimiter(',');
    add_out(verify, va.out);
    add_config(verify, config_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    CLI::App* active = app.get_subcommands().front();
    try {
        if (!config_path.empty()) apply_config(*active, load_config(config_path), config_path);
        if (active == stationary) return run_stationary(st);
        if (active == evolve) return run_evolve(ev);
        if (active == barenblatt) return run_barenblatt(ba);
        return run_verify_all(va);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const khess::ParameterError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const khess::DomainTooSmallError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const khess::Error& e) {
        std::cerr << "invariant breach: " << e.what() << "\n";
        return kInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvariant;
    }
}
