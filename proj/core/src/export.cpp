#include "khess/export.hpp"

#include <cstdio>
#include <fstream>

#include "khess/errors.hpp"

namespace khess {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", value);
    return buf;
}

void write_profile_csv(const std::filesystem::path& path, const RadialProfile& profile, std::string_view column) {
    std::ofstream out = open_for_write(path);
    out << "r," << column << '\n';
    for (int i = 0; i < profile.size(); ++i) {
        out << format_double(profile.grid().node(i)) << ',' << format_double(profile[i]) << '\n';
    }
}

void write_decay_csv(const std::filesystem::path& path, std::span<const DecaySample> samples) {
    std::ofstream out = open_for_write(path);
    out << "t,sup_gap,mass,T_lower,T_upper\n";
    for (const DecaySample& s : samples) {
        out << format_double(s.t) << ',' << format_double(s.sup_gap) << ',' << format_double(s.mass) << ','
            << format_double(s.T_lower) << ',' << format_double(s.T_upper) << '\n';
    }
}

void write_trajectory_csv(const std::filesystem::path& path, std::span<const TrajectoryRow> rows) {
    std::ofstream out = open_for_write(path);
    out << "t,r,u\n";
    for (const TrajectoryRow& row : rows) {
        out << format_double(row.t) << ',' << format_double(row.r) << ',' << format_double(row.u) << '\n';
    }
}

}  // namespace khess
