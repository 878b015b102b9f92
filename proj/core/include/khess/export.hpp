#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "khess/evolution.hpp"
#include "khess/grid.hpp"

namespace khess {

/// Scientific notation with 17 significant digits; round-trips every double.
std::string format_double(double value);

/// Header `r,<column>` then one row per node.
void write_profile_csv(const std::filesystem::path& path, const RadialProfile& profile,
                       std::string_view column = "theta");

/// Header `t,sup_gap,mass,T_lower,T_upper`.
void write_decay_csv(const std::filesystem::path& path, std::span<const DecaySample> samples);

struct TrajectoryRow {
    double t = 0.0;
    double r = 0.0;
    double u = 0.0;
};

/// Header `t,r,u`.
void write_trajectory_csv(const std::filesystem::path& path, std::span<const TrajectoryRow> rows);

}  // namespace khess
