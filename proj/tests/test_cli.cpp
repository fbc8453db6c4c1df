#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli.hpp"

#include "ottoref/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace ottoref;

namespace {

int run_cli(const std::vector<std::string>& args)
{
    std::vector<const char*> argv{"ottoref"};
    for (const auto& s : args) argv.push_back(s.c_str());
    return cli::run(static_cast<int>(argv.size()), argv.data());
}

fs::path fresh_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& file)
{
    std::ifstream is(file);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("simulate writes a re-summarizable trajectory")
{
    const fs::path out = fresh_dir("ottoref_cli_sim");
    REQUIRE(run_cli({"--quiet", "simulate", "--omega", "0.1", "--mode", "classical", "--out",
                     out.string()}) == 0);

    const fs::path traj = out / "trajectory_classical_omega0.1.csv";
    const fs::path summ = out / "summary_classical_omega0.1.csv";
    REQUIRE(fs::exists(traj));
    REQUIRE(fs::exists(summ));

    const CsvTable st = read_csv(summ);
    REQUIRE(st.rows.size() == 1);
    const OfflineSummary off = resummarize_trajectory_csv(traj);
    const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::abs(b); };
    CHECK(close(off.q_c, st.rows[0][st.column("q_c")]));
    CHECK(close(off.q_h, st.rows[0][st.column("q_h")]));
    CHECK(close(off.work, st.rows[0][st.column("work")]));
    CHECK(close(off.eta, st.rows[0][st.column("eta")]));

    SUBCASE("repeat runs are bit-identical")
    {
        const fs::path out2 = fresh_dir("ottoref_cli_sim2");
        REQUIRE(run_cli({"--quiet", "simulate", "--omega", "0.1", "--mode", "classical", "--out",
                         out2.string()}) == 0);
        CHECK(slurp(traj) == slurp(out2 / "trajectory_classical_omega0.1.csv"));
        CHECK(slurp(summ) == slurp(out2 / "summary_classical_omega0.1.csv"));
    }
}

TEST_CASE("figure 2 data has the drive and control-field columns")
{
    const fs::path out = fresh_dir("ottoref_cli_fig2");
    REQUIRE(run_cli({"--quiet", "figure", "--id", "2", "--out", out.string()}) == 0);
    const CsvTable t = read_csv(out / "figure2.csv");
    REQUIRE(t.rows.size() == 1001);
    const std::size_t iq = t.column("q");
    for (const char* name : {"thetadot_omega0.01", "thetadot_omega0.05", "thetadot_omega0.1"}) {
        const std::size_t ic = t.column(name);
        // zero crossings of the control field at phase 0, pi, 2 pi
        CHECK(std::abs(t.rows.front()[ic]) < 1e-12);
        CHECK(std::abs(t.rows[500][ic]) < 1e-12);
        CHECK(std::abs(t.rows.back()[ic]) < 1e-12);
    }
    CHECK(t.rows.front()[iq] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t.rows[500][iq] == doctest::Approx(0.0).epsilon(1e-10).scale(1.0));
}

TEST_CASE("sweep subcommand writes the summary table")
{
    const fs::path out = fresh_dir("ottoref_cli_sweep");
    const fs::path cfg = out / "cfg.json";
    std::ofstream(cfg) << R"({"omega_grid": [0.08, 0.1], "modes": ["classical"],
                              "steps_per_cycle": 2000})";
    REQUIRE(run_cli({"--quiet", "sweep", "--config", cfg.string(), "--out", out.string()}) == 0);
    const CsvTable t = read_csv(out / "sweep_summary.csv");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][t.column("omega")] == 0.08);
    CHECK(t.rows[1][t.column("omega")] == 0.1);
    CHECK(t.rows[0][t.column("cycles_to_converge")] > 0);
}

TEST_CASE("validate subcommand exits cleanly on the pristine build")
{
    CHECK(run_cli({"validate"}) == 0);
}

TEST_CASE("usage errors exit with status 2")
{
    CHECK(run_cli({}) == 2);                                  // missing subcommand
    CHECK(run_cli({"explode"}) == 2);                         // unknown subcommand
    CHECK(run_cli({"simulate", "--frequency", "1"}) == 2);    // unknown flag
    CHECK(run_cli({"simulate", "--mode", "quantum"}) == 2);   // bad enum value
    CHECK(run_cli({"figure", "--id", "9"}) == 2);             // out-of-range figure
    CHECK(run_cli({"--quiet", "--verbose", "validate"}) == 2);  // mutually exclusive
    CHECK(run_cli({"--config", "/nonexistent.json", "validate"}) == 2);
}
