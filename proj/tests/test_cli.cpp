#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rscat/commands.hpp"
#include "rscat/config.hpp"

using namespace rscat;
using Catch::Approx;
using nlohmann::json;

namespace {

CliResult cli(std::initializer_list<std::string> args) {
    return run_cli(std::vector<std::string>(args));
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) lines.push_back(current);
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

}  // namespace

TEST_CASE("energy parsing with unit suffixes") {
    CHECK(parse_energy_uev("2380", "x") == Approx(2380.0));
    CHECK(parse_energy_uev("2380uev", "x") == Approx(2380.0));
    CHECK(parse_energy_uev("2.56meV", "x") == Approx(2560.0));
    CHECK(parse_energy_uev("1.323eV", "x") == Approx(1.323e6));
    CHECK(parse_energy_uev("2.88GHz", "x") == Approx(11.9107229645).margin(1e-9));
    CHECK(parse_energy_uev("500mhz", "x") == Approx(2.067833848).margin(1e-9));
    CHECK(parse_energy_uev(" 10 uev ", "x") == Approx(10.0));
    CHECK_THROWS_AS(parse_energy_uev("fast", "x"), ConfigError);
    CHECK_THROWS_AS(parse_energy_uev("", "x"), ConfigError);
    CHECK_THROWS_AS(parse_energy_uev("10kev", "x"), ConfigError);
}

TEST_CASE("config files and --set overrides") {
    const std::string path = "test_rscat_config.tmp";
    {
        std::ofstream out(path);
        out << "# pillar, lossless\n";
        out << "kappa = 2560uev\n";
        out << "gamma = 10uev   # dipole linewidth\n";
        out << "rs_g = true\n";
        out << "sweep_start = -50\n";
        out << "sweep_stop = 50\n";
        out << "sweep_points = 5\n";
    }
    RunConfig cfg;
    cfg.load_file(path);
    CHECK(cfg.require_energy_uev("kappa") == Approx(2560.0));
    CHECK(cfg.get_bool("rs_g", false));

    cfg.set_pair("kappa=100uev");
    CHECK(cfg.require_energy_uev("kappa") == Approx(100.0));

    CHECK_THROWS_AS(cfg.set_pair("no_equals_sign"), ConfigError);
    cfg.set("rs_g", "maybe");
    CHECK_THROWS_AS(cfg.get_bool("rs_g", false), ConfigError);
    cfg.set("trials", "1.5");
    CHECK_THROWS_AS(cfg.require_int("trials"), ConfigError);
    cfg.set("trials", "1e5");
    CHECK(cfg.require_int("trials") == 100000);

    RunConfig missing;
    CHECK_THROWS_AS(missing.load_file("does_not_exist.cfg"), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("--config file feeds a command, --set still wins") {
    const std::string path = "test_rscat_cli_config.tmp";
    {
        std::ofstream out(path);
        out << "r_c = 1\n";
        out << "r_d = 1   # no contrast\n";
    }
    const CliResult from_file = cli({"protocol", "--config", path});
    REQUIRE(from_file.exit_code == 0);
    const auto fields = split_fields(split_lines(from_file.output)[1]);
    CHECK(std::stod(fields[1]) == Approx(1.0 / std::sqrt(2.0)).margin(1e-9));

    const CliResult overridden = cli({"protocol", "--config", path, "--set", "r_d=0"});
    REQUIRE(overridden.exit_code == 0);
    CHECK(split_lines(overridden.output)[1] == "up,1,0.25,0.25");

    const CliResult bad = cli({"protocol", "--config", "missing_file.cfg"});
    CHECK(bad.exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("design command emits the solved pillar chain as JSON") {
    const CliResult result = cli({"design", "--set", "preset=pillar_reithmaier"});
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.output);
    CHECK(doc["kappa_T_uev"].get<double>() == Approx(2560.0));
    CHECK(doc["kappa_uev"].get<double>() == Approx(2380.0));
    CHECK(doc["q_factor"].get<double>() == Approx(516.796875).margin(1e-6));
    CHECK(doc["kappa_ratio"].get<double>() == Approx(13.2222222222).margin(1e-6));
    CHECK(doc["eta_psi_plus"].get<double>() == Approx(0.138186627068).margin(1e-9));
    CHECK(doc["fidelity_psi_plus"].get<double>() == Approx(0.987045196577).margin(1e-9));
    CHECK(doc["strong_coupling_kappa_T_uev"].get<double>() == Approx(70.0));
    CHECK(doc["strong_coupling_q_factor"].get<double>() == Approx(18900.0).margin(1e-6));
}

TEST_CASE("design command on the NV preset") {
    const CliResult result = cli({"design", "--set", "preset=nv_photonic_crystal"});
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.output);
    CHECK(doc["kappa_T_uev"].get<double>() == Approx(7290.0));
    CHECK(doc["q_factor"].get<double>() == Approx(266.941015089).margin(1e-6));
    CHECK(doc["kappa_ratio"].is_null());
}

TEST_CASE("design failure exit codes") {
    SECTION("unknown preset is a config error") {
        const CliResult result = cli({"design", "--set", "preset=mystery"});
        CHECK(result.exit_code == 2);
        CHECK(result.error.find("preset") != std::string::npos);
    }
    SECTION("missing parameters name the field") {
        const CliResult result = cli({"design", "--set", "gamma=1uev"});
        CHECK(result.exit_code == 2);
        CHECK(result.error.find("omega_photon") != std::string::npos);
    }
    SECTION("infeasible loss budget exits 3") {
        const CliResult result =
            cli({"design", "--set", "g=10uev", "--set", "gamma=1uev",
                 "--set", "kappa_s=400uev", "--set", "omega_photon=1.3ev"});
        CHECK(result.exit_code == 3);
    }
}

TEST_CASE("protocol command") {
    SECTION("ideal contrast rows") {
        const CliResult result =
            cli({"protocol", "--set", "r_c=1", "--set", "r_d=0"});
        REQUIRE(result.exit_code == 0);
        const auto lines = split_lines(result.output);
        REQUIRE(lines.size() == 3);
        CHECK(lines[0] == "outcome,fidelity,efficiency,branch_probability");
        CHECK(lines[1] == "up,1,0.25,0.25");
        CHECK(lines[2] == "down,1,0.25,0.25");
    }
    SECTION("preset contrast, JSON output") {
        const CliResult result = cli({"protocol", "--set", "preset=pillar_reithmaier",
                                      "--format", "json"});
        REQUIRE(result.exit_code == 0);
        const json rows = json::parse(result.output);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0]["outcome"] == "up");
        CHECK(rows[0]["fidelity"].get<double>() == Approx(0.987045196577).margin(1e-9));
        CHECK(rows[1]["efficiency"].get<double>() == Approx(0.134535470046).margin(1e-9));
    }
    SECTION("ghz needs n") {
        const CliResult bad = cli({"protocol", "--set", "protocol=ghz",
                                   "--set", "r_c=1", "--set", "r_d=0"});
        CHECK(bad.exit_code == 2);
        CHECK(bad.error.find("'n'") != std::string::npos);

        const CliResult good = cli({"protocol", "--set", "protocol=ghz", "--set", "n=3",
                                    "--set", "r_c=1", "--set", "r_d=0"});
        REQUIRE(good.exit_code == 0);
        CHECK(good.output.find("up,1,0.125,0.125") != std::string::npos);
    }
    SECTION("spin-spin with distinct cavities") {
        const CliResult result =
            cli({"protocol", "--set", "protocol=spin-spin", "--set", "r_c=1",
                 "--set", "r_d=0", "--set", "r_c2=1", "--set", "r_d2=1"});
        REQUIRE(result.exit_code == 0);
        const auto lines = split_lines(result.output);
        const auto fields = split_fields(lines[1]);
        CHECK(fields[0] == "H");
        CHECK(std::stod(fields[1]) == Approx(1.0 / std::sqrt(2.0)).margin(1e-9));
    }
    SECTION("interference protocol") {
        const CliResult result =
            cli({"protocol", "--set", "protocol=interference", "--set", "r_c=1",
                 "--set", "r_d=0"});
        REQUIRE(result.exit_code == 0);
        CHECK(result.output.find("D1,1,0.25,0.25") != std::string::npos);
    }
    SECTION("missing contrast names the field") {
        const CliResult result = cli({"protocol"});
        CHECK(result.exit_code == 2);
        CHECK(result.error.find("r_c") != std::string::npos);
    }
}

TEST_CASE("reflectivity-sweep command") {
    SECTION("resonance-scattering dip reaches zero at zero detuning") {
        const CliResult result = cli(
            {"reflectivity-sweep", "--set", "kappa=1000uev", "--set", "kappa_s=0",
             "--set", "gamma=100uev", "--set", "rs_g=true", "--set", "sweep_unit=gamma",
             "--set", "sweep_start=-5", "--set", "sweep_stop=5",
             "--set", "sweep_points=5"});
        REQUIRE(result.exit_code == 0);
        const auto lines = split_lines(result.output);
        REQUIRE(lines.size() == 6);  // header + 5 points
        CHECK(lines[0] == "detuning_uev,abs_r_c,abs_r_d,phase_c,phase_d");
        const auto mid = split_fields(lines[3]);  // detuning 0
        CHECK(std::stod(mid[0]) == Approx(0.0).margin(1e-12));
        CHECK(std::stod(mid[1]) == Approx(1.0).margin(1e-9));  // lossless empty cavity
        CHECK(std::stod(mid[2]) < 1e-9);                       // coupled dip
    }
    SECTION("lossy pillar preset keeps the residual reflection at the dip") {
        const CliResult result = cli(
            {"reflectivity-sweep", "--set", "preset=pillar_reithmaier",
             "--set", "sweep_start=-1", "--set", "sweep_stop=1",
             "--set", "sweep_points=3"});
        REQUIRE(result.exit_code == 0);
        const auto mid = split_fields(split_lines(result.output)[2]);
        CHECK(std::stod(mid[2]) == Approx(0.0703125).margin(1e-9));
    }
    SECTION("sweep validation") {
        CliResult result = cli({"reflectivity-sweep", "--set", "kappa=100uev",
                                "--set", "gamma=1uev", "--set", "sweep_start=-1",
                                "--set", "sweep_stop=1", "--set", "sweep_points=1"});
        CHECK(result.exit_code == 2);
        CHECK(result.error.find("sweep_points") != std::string::npos);

        result = cli({"reflectivity-sweep", "--set", "kappa=100uev",
                      "--set", "gamma=1uev", "--set", "sweep=voltage",
                      "--set", "sweep_start=-1", "--set", "sweep_stop=1"});
        CHECK(result.exit_code == 2);
        CHECK(result.error.find("sweep") != std::string::npos);
    }
}

TEST_CASE("loss-sweep command reproduces the contrast landmarks") {
    const CliResult result = cli(
        {"loss-sweep", "--set", "kappa_T=2560uev", "--set", "gamma=10uev",
         "--set", "sweep_start=1", "--set", "sweep_stop=2", "--set", "sweep_points=2",
         "--set", "sweep_scale=log"});
    REQUIRE(result.exit_code == 0);
    const auto lines = split_lines(result.output);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] ==
          "kappa_ratio,abs_r_c,abs_r_d,F_psi_plus,eta_psi_plus,eta_psi_minus");
    const auto at1 = split_fields(lines[1]);
    CHECK(std::stod(at1[1]) < 1e-12);                                   // r_c = 0
    CHECK(std::stod(at1[2]) == Approx(0.5).margin(1e-12));              // r_d = 1/2
    CHECK(std::stod(at1[3]) == Approx(1.0).margin(1e-12));              // F = 1
    CHECK(std::stod(at1[4]) == Approx(0.015625).margin(1e-12));         // eta
    const auto at2 = split_fields(lines[2]);
    CHECK(std::stod(at2[1]) == Approx(std::stod(at2[2])).margin(1e-12));  // crossing
}

TEST_CASE("herald command") {
    SECTION("requires an explicit seed") {
        const CliResult result = cli({"herald", "--set", "p=0.138"});
        CHECK(result.exit_code == 2);
        CHECK(result.error.find("seed") != std::string::npos);
    }
    SECTION("pair statistics at the pillar efficiency") {
        const CliResult result = cli({"herald", "--seed", "42", "--set", "p=0.138",
                                      "--set", "trials=100000"});
        REQUIRE(result.exit_code == 0);
        const auto lines = split_lines(result.output);
        REQUIRE(lines.size() == 2);
        const auto fields = split_fields(lines[1]);
        CHECK(fields[0] == "pair");
        const double mean = std::stod(fields[3]);
        CHECK(mean == Approx(7.24637681159).margin(3.0 * 0.0212752438491));
    }
    SECTION("identical config and seed give byte-identical output") {
        const std::initializer_list<std::string> args = {
            "herald", "--seed", "7", "--set", "p=0.14", "--set", "mode=cluster",
            "--set", "n_spins=4", "--set", "trials=2000"};
        const CliResult a = cli(args);
        const CliResult b = cli(args);
        REQUIRE(a.exit_code == 0);
        CHECK(a.output == b.output);
        CHECK(!a.output.empty());
    }
    SECTION("different seeds give different samples") {
        const CliResult a = cli({"herald", "--seed", "1", "--set", "p=0.14",
                                 "--set", "trials=500"});
        const CliResult b = cli({"herald", "--seed", "2", "--set", "p=0.14",
                                 "--set", "trials=500"});
        CHECK(a.output != b.output);
    }
}

TEST_CASE("presets command lists the built-ins") {
    const CliResult result = cli({"presets"});
    REQUIRE(result.exit_code == 0);
    CHECK(result.output == "pillar_reithmaier\nnv_photonic_crystal\n");

    const CliResult as_json = cli({"presets", "--format", "json"});
    const json names = json::parse(as_json.output);
    CHECK(names.size() == 2);
}

TEST_CASE("--output writes the rendered document to a file") {
    const std::string path = "test_rscat_out.tmp";
    const CliResult result = cli({"protocol", "--set", "r_c=1", "--set", "r_d=0",
                                  "--output", path});
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string first_line;
    std::getline(in, first_line);
    CHECK(first_line == "outcome,fidelity,efficiency,branch_probability");
    in.close();
    std::remove(path.c_str());
}

TEST_CASE("CLI surface errors") {
    SECTION("unknown command") {
        CHECK(cli({"frobnicate"}).exit_code == 2);
    }
    SECTION("no command") {
        CHECK(cli({}).exit_code == 2);
    }
    SECTION("bad format value") {
        CHECK(cli({"presets", "--format", "xml"}).exit_code == 2);
    }
    SECTION("help succeeds") {
        const CliResult result = cli({"--help"});
        CHECK(result.exit_code == 0);
        CHECK(result.output.find("reflectivity-sweep") != std::string::npos);
    }
}

TEST_CASE("numbers are printed with 12 significant digits") {
    CHECK(format_number(0.1381866270676851) == "0.138186627068");
    CHECK(format_number(2560.0) == "2560");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(-0.0) == "0");
    CHECK(round_to_output_precision(0.1381866270676851) == Approx(0.138186627068));
}
