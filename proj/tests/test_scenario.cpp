#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bresse/scenario.hpp"

using namespace bresse;
namespace fs = std::filesystem;

namespace {

RunConfig tiny_config() {
    RunConfig cfg = preset("equal-speed");
    cfg.s = 8;
    cfg.dt = 0.05;
    cfg.T = 1.0;
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

fs::path scratch_dir(const std::string& leaf) {
    const fs::path dir = fs::temp_directory_path() / leaf;
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("the energy table renders exactly, with and without diagnostics") {
    EnergyTrace trace;
    trace.rows.push_back(EnergyRow{0, 0.0, 2.0, 0.5, 1.0, 0.5, std::nullopt});
    trace.rows.push_back(EnergyRow{1, 0.25, 1.0, 0.25, 0.5, 0.25, std::nullopt});

    std::ostringstream plain;
    write_energy_csv(trace, plain);
    CHECK(plain.str() ==
          "n,t,E,mem,Ekin,Epot\n"
          "0,0,2,0.5,1,0.5\n"
          "1,0.25,1,0.25,0.5,0.25\n");

    trace.has_diagnostics = true;
    trace.rows[0].diag = LyapunovValues{1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0};
    std::ostringstream detailed;
    write_energy_csv(trace, detailed);
    CHECK(detailed.str() ==
          "n,t,E,mem,Ekin,Epot,I1,I2,I3,I4,I5,I6,L\n"
          "0,0,2,0.5,1,0.5,1,2,3,4,5,6,7\n"
          "1,0.25,1,0.25,0.5,0.25,,,,,,,\n");
}

TEST_CASE("snapshot and section writers render exactly") {
    const Mesh mesh = build_mesh(2, 1.0);
    Snapshot snap;
    snap.t = 0.5;
    snap.phi = {0.0, 1.0, 0.0};
    snap.psi = {1.0, 2.0, 3.0};
    snap.w = {4.0, 5.0, 6.0};
    std::ostringstream out;
    write_snapshot(mesh, snap, out);
    CHECK(out.str() ==
          "# t = 0.5\n"
          "# x phi psi w\n"
          "0 0 1 4\n"
          "0.5 1 2 5\n"
          "1 0 3 6\n");

    std::ostringstream sect;
    write_section_csv({{0.0, 1.0, 2.0, 3.0}, {0.5, 4.0, 5.0, 6.0}}, sect);
    CHECK(sect.str() ==
          "t,phi_mid,psi_mid,w_mid\n"
          "0,1,2,3\n"
          "0.5,4,5,6\n");
}

TEST_CASE("run_scenario produces the full artifact set") {
    const RunConfig cfg = tiny_config();
    ScenarioOptions opt;
    const fs::path dir = scratch_dir("bresse_scenario_a");
    opt.out_dir = dir.string();

    const ScenarioResult res = run_scenario(cfg, opt);
    CHECK(res.run.steps == 20);
    CHECK(res.speed_case == SpeedCase::equal);
    CHECK(res.exp_fit.has_value());
    CHECK(res.poly_fit.has_value());
    CHECK(res.envelope.has_value());
    CHECK(res.window.t0 == doctest::Approx(0.25));
    CHECK(res.window.t1 == doctest::Approx(1.0));

    for (const char* name : {"energy.csv", "section.csv", "summary.txt", "plot.gp",
                             "fields_0000.dat"}) {
        CAPTURE(name);
        CHECK(fs::exists(dir / name));
    }
    std::size_t n_fields = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().filename().string().rfind("fields_", 0) == 0) ++n_fields;
    }
    CHECK(n_fields == res.run.snapshots.size());

    const auto energy_lines = split_lines(slurp(dir / "energy.csv"));
    REQUIRE(energy_lines.size() == 22);  // header + 21 logged steps
    CHECK(energy_lines[0] == "n,t,E,mem,Ekin,Epot");
    CHECK(energy_lines[1].rfind("0,0,", 0) == 0);

    // the energy column decays over the run
    const std::string& first = energy_lines[1];
    const std::string& last = energy_lines.back();
    auto third_field = [](const std::string& line) {
        std::size_t a = line.find(',');
        std::size_t b = line.find(',', a + 1);
        std::size_t c = line.find(',', b + 1);
        return std::stod(line.substr(b + 1, c - b - 1));
    };
    CHECK(third_field(last) < third_field(first));
    CHECK(third_field(last) > 0.0);

    const std::string summary = slurp(dir / "summary.txt");
    CHECK(summary.find("wave speeds") != std::string::npos);
    CHECK(summary.find("(first pair equal") != std::string::npos);
    CHECK(summary.find("exponential fit") != std::string::npos);

    const std::string plot = slurp(dir / "plot.gp");
    CHECK(plot.find("set output") != std::string::npos);
    CHECK(plot.find("energy.csv") != std::string::npos);

    const auto section_lines = split_lines(slurp(dir / "section.csv"));
    CHECK(section_lines.size() == res.run.section.size() + 1);

    fs::remove_all(dir);
}

TEST_CASE("identical scenarios write byte-identical artifacts") {
    const RunConfig cfg = tiny_config();
    const fs::path dir_a = scratch_dir("bresse_scenario_b1");
    const fs::path dir_b = scratch_dir("bresse_scenario_b2");
    ScenarioOptions opt_a, opt_b;
    opt_a.out_dir = dir_a.string();
    opt_b.out_dir = dir_b.string();
    run_scenario(cfg, opt_a);
    run_scenario(cfg, opt_b);
    for (const char* name : {"energy.csv", "section.csv", "summary.txt", "fields_0000.dat"}) {
        CAPTURE(name);
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
    }
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("dry runs classify without stepping or writing") {
    const RunConfig cfg = tiny_config();
    ScenarioOptions opt;
    const fs::path dir = scratch_dir("bresse_scenario_dry");
    opt.out_dir = dir.string();
    opt.dry_run = true;

    const ScenarioResult res = run_scenario(cfg, opt);
    CHECK(res.run.steps == 0);
    CHECK(res.run.trace.rows.empty());
    CHECK(res.speeds.s1 > 0.0);
    CHECK(res.admissibility.a1_satisfied);
    CHECK_FALSE(fs::exists(dir));

    std::ostringstream out;
    write_summary(cfg, res, out);
    CHECK(out.str().find("dry run") != std::string::npos);
}

TEST_CASE("an explicit fit window overrides the default tail") {
    RunConfig cfg = tiny_config();
    ScenarioOptions opt;
    const fs::path dir = scratch_dir("bresse_scenario_win");
    opt.out_dir = dir.string();
    opt.fit_window = FitWindow{0.5, 1.0};
    const ScenarioResult res = run_scenario(cfg, opt);
    CHECK(res.window.t0 == 0.5);
    CHECK(res.window.t1 == 1.0);
    fs::remove_all(dir);
}

TEST_CASE("a diagnostics request fills the Lyapunov columns") {
    RunConfig cfg = tiny_config();
    ScenarioOptions opt;
    const fs::path dir = scratch_dir("bresse_scenario_diag");
    opt.out_dir = dir.string();
    opt.diagnostics = true;
    const ScenarioResult res = run_scenario(cfg, opt);
    CHECK(res.run.trace.has_diagnostics);
    const auto lines = split_lines(slurp(dir / "energy.csv"));
    CHECK(lines[0] == "n,t,E,mem,Ekin,Epot,I1,I2,I3,I4,I5,I6,L");
    // every logged row carries the diagnostic block
    for (std::size_t i = 1; i < lines.size(); ++i) {
        CHECK(lines[i].find(",,") == std::string::npos);
    }
    fs::remove_all(dir);
}

TEST_CASE("memoryless runs fall back gracefully") {
    RunConfig cfg = tiny_config();
    cfg.kernel = Kernel::none();
    cfg.flags.exponential_fastpath = false;
    ScenarioOptions opt;
    const fs::path dir = scratch_dir("bresse_scenario_none");
    opt.out_dir = dir.string();
    const ScenarioResult res = run_scenario(cfg, opt);
    CHECK(res.run.steps == 20);
    CHECK_FALSE(res.admissibility.a1_satisfied);
    fs::remove_all(dir);
}
