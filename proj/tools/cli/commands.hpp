#pragma once

#include <optional>
#include <string>
#include <vector>

namespace khess::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kTolerance = 2, kInvariant = 3 };

struct StationaryConfig {
    int n = 3;
    int k = 2;
    double radius = 1.0;
    int cells = 256;
    int ode_steps = 20000;
    /// Default: 1e-6 max(1, (2048/cells)^2) max(1, sup|theta|).
    std::optional<double> tol;
    std::string out;
};

struct EvolveConfig {
    int n = 3;
    int k = 2;
    double radius = 1.0;
    int cells = 128;
    double t_end = 100.0;
    double cfl = 0.9;
    /// theta | scaled:s | perturbed:a | file:path
    std::string init = "theta";
    int ode_steps = 20000;
    int samples_per_octave = 4;
    double fit_t_min = 10.0;
    double fit_t_max = 1000.0;
    /// Default: 1e-9 + (k-1) max(T_lower0, 1) * residual(theta_h).
    std::optional<double> sandwich_tol;
    std::string out;
};

struct BarenblattConfig {
    int n = 3;
    int k = 2;
    std::optional<double> C;
    std::optional<double> mass;
    int quad_points = 100000;
    bool evolve_free = false;
    int cells = 300;
    double t_end = 100.0;
    /// polynomial | barenblatt:C | file:path (whole-space run only)
    std::string init = "polynomial";
    std::string out;
};

struct VerifyConfig {
    bool fast = false;
    int jobs = 1;
    std::vector<int> only;
    std::string out;
};

int run_stationary(const StationaryConfig& cfg);
int run_evolve(const EvolveConfig& cfg);
int run_barenblatt(const BarenblattConfig& cfg);
int run_verify_all(const VerifyConfig& cfg);

}  // namespace khess::cli
