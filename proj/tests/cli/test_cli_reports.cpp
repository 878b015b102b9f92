#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

// Runs `khess <args> --out <dir>` and returns the exit status.
int khess(const std::string& args, const fs::path& dir) {
    const std::string cmd = std::string(KHESS_EXE) + " " + args + " --out " + dir.string() + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json report(const fs::path& dir) {
    std::ifstream in(dir / "report.json");
    return nlohmann::json::parse(in);
}

fs::path work(const std::string& name) {
    const fs::path dir = fs::path(KHESS_WORK) / name;
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST(CliStationary, ResidualQuartersUnderRefinement) {
    const fs::path a = work("cells128");
    const fs::path b = work("cells256");
    ASSERT_EQ(khess("stationary --n 3 --k 2 --cells 128", a), 0);
    ASSERT_EQ(khess("stationary --n 3 --k 2 --cells 256", b), 0);
    const double ratio = report(a)["residual"].get<double>() / report(b)["residual"].get<double>();
    EXPECT_NEAR(ratio, 4.0, 0.2);
}

TEST(CliStationary, ExampleMeetsTolerance) {
    const fs::path dir = work("cells2048");
    ASSERT_EQ(khess("stationary --n 3 --k 2 --radius 1 --cells 2048", dir), 0);
    const nlohmann::json r = report(dir);
    EXPECT_LE(r["residual"].get<double>(), 1e-6);
    EXPECT_TRUE(r["ball_bound"]["satisfied"].get<bool>());
    EXPECT_TRUE(r["torsion_bound"]["satisfied"].get<bool>());
}

TEST(CliEvolve, SharpSlope) {
    const fs::path dir = work("scaled2");
    ASSERT_EQ(khess("evolve --init scaled:2 --t-end 1000", dir), 0);
    const double slope = report(dir)["fitted_slope"].get<double>();
    EXPECT_GE(slope, -1.05);
    EXPECT_LE(slope, -0.95);
}

TEST(CliEvolve, ThetaStaysWithinDiscretizationEstimate) {
    const fs::path dir = work("theta");
    ASSERT_EQ(khess("evolve --init theta", dir), 0);
    EXPECT_LE(report(dir)["max_gap_over_discretization_estimate"].get<double>(), 10.0);
}

TEST(CliEvolve, PerturbedSandwich) {
    const fs::path dir = work("perturbed");
    ASSERT_EQ(khess("evolve --init perturbed:0.2", dir), 0);
    const nlohmann::json r = report(dir);
    EXPECT_LE(r["max_sandwich_violation"].get<double>(), 1e-9);
    EXPECT_LT(r["perturbation_amplitude"].get<double>(), 0.2);
    EXPECT_TRUE(r["mass_strictly_decreasing"].get<bool>());
}

TEST(CliEvolve, FileInitRoundTrips) {
    const fs::path src = work("file_src");
    ASSERT_EQ(khess("evolve --n 2 --k 2 --cells 40 --t-end 5 --init perturbed:0.1", src), 0);
    const fs::path dir = work("file_run");
    ASSERT_EQ(khess("evolve --n 2 --k 2 --t-end 5 --init file:" + (src / "initial.csv").string(), dir), 0);
    std::ifstream a(src / "decay.csv");
    std::ifstream b(dir / "decay.csv");
    const std::string sa((std::istreambuf_iterator<char>(a)), {});
    const std::string sb((std::istreambuf_iterator<char>(b)), {});
    EXPECT_EQ(sa, sb);
}

TEST(CliBarenblatt, MassRoundTrip) {
    const fs::path dir = work("mass5");
    ASSERT_EQ(khess("barenblatt --mass 5", dir), 0);
    const nlohmann::json r = report(dir);
    EXPECT_NEAR(r["M"].get<double>(), 5.0, 1e-10);
    EXPECT_LE(r["mass_roundtrip_error"].get<double>(), 1e-6);
    for (const char* key : {"C", "M", "r0", "residual_max", "mass_drift", "support_slope"}) EXPECT_TRUE(r.contains(key)) << key;
}

TEST(CliBarenblatt, FreeEvolutionIsReported) {
    const fs::path dir = work("free");
    ASSERT_EQ(khess("barenblatt --n 3 --k 3 --evolve-free --cells 200", dir), 0);
    const nlohmann::json f = report(dir)["free_evolution"];
    EXPECT_TRUE(f["informational"].get<bool>());
    EXPECT_LE(f["mass_drift"].get<double>(), 1e-12);
    EXPECT_TRUE(fs::exists(dir / "free_evolution.csv"));
}
