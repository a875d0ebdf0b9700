#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "softspace/bdm.hpp"
#include "softspace/ctm.hpp"

using namespace softspace;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kCli = SOFTSPACE_CLI_PATH;
const fs::path kFixtures = SOFTSPACE_FIXTURE_DIR;

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

CommandResult run_cli(const std::string& args) {
    const std::string command = kCli + " " + args + " 2>/dev/null";
    std::array<char, 4096> buffer;
    CommandResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.output.append(buffer.data(), n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path temp_dir() {
    static std::mt19937_64 rng(std::random_device{}());
    const fs::path dir =
        fs::temp_directory_path() / ("softspace_cli_" + std::to_string(rng()));
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("enumerate reports the (3,2) space size") {
    const CommandResult res = run_cli("enumerate -n 3 -m 2");
    CHECK(res.exit_code == 0);
    const json out = json::parse(res.output);
    CHECK(out["space_size"] == "7529536");
    CHECK(out["instructions_per_entry"] == 14);
}

TEST_CASE("run-space: halting plus censored partitions the space") {
    const CommandResult res = run_cli("run-space -n 2 -m 2 -b 200");
    CHECK(res.exit_code == 0);
    const json out = json::parse(res.output);
    CHECK(out["total"] == 10000);
    CHECK(out["halting_count"].get<uint64_t>() + out["censored_count"].get<uint64_t>() == 10000);
    CHECK(out["halting_count"] == 3044);
    CHECK(out["max_steps"] == 6);
    CHECK(out.contains("config_hash"));
}

TEST_CASE("invalid budget is a usage error with exit 2") {
    CHECK(run_cli("run-space -n 2 -m 2 -b 0").exit_code == 2);
    CHECK(run_cli("run-space -n 2 -m 2 --budget notanumber").exit_code == 2);
    CHECK(run_cli("definitely-not-a-command").exit_code == 2);
}

TEST_CASE("identical configs produce byte-identical artifacts") {
    const fs::path dir = temp_dir();
    const std::string base = "run-space -n 2 -m 2 -b 100 -r 0:2000 ";
    CHECK(run_cli(base + "--records " + (dir / "a.csv").string() + " --summary " +
                  (dir / "a.json").string())
              .exit_code == 0);
    CHECK(run_cli(base + "-t 2 --records " + (dir / "b.csv").string() + " --summary " +
                  (dir / "b.json").string())
              .exit_code == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
    // Records CSV carries provenance, a header and one line per machine.
    std::istringstream csv(slurp(dir / "a.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line.rfind("# config=", 0) == 0);
    std::getline(csv, line);
    CHECK(line == "index,halted,steps,output");
    size_t rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
    }
    CHECK(rows == 2000);
    fs::remove_all(dir);
}

TEST_CASE("ctm build, query and merge work end to end") {
    const fs::path dir = temp_dir();
    const fs::path full = dir / "full.ctm";
    const fs::path lo = dir / "lo.ctm";
    const fs::path hi = dir / "hi.ctm";
    const fs::path merged = dir / "merged.ctm";

    CHECK(run_cli("ctm build -n 2 -m 2 -b 500 -o " + full.string()).exit_code == 0);
    CHECK(run_cli("ctm build -n 2 -m 2 -b 500 -r 0:5000 -o " + lo.string()).exit_code == 0);
    CHECK(run_cli("ctm build -n 2 -m 2 -b 500 -r 5000:10000 -o " + hi.string()).exit_code == 0);
    CHECK(run_cli("ctm merge -o " + merged.string() + " " + lo.string() + " " + hi.string())
              .exit_code == 0);
    CHECK(slurp(full) == slurp(merged));

    const CommandResult query = run_cli("ctm query --table " + full.string() + " 0");
    CHECK(query.exit_code == 0);
    // Matches the in-process oracle.
    const CtmTable table = load_table(full);
    std::ostringstream expected;
    expected << "string,count,ap,ctm\n"
             << "0," << table.counts.at("0") << "," << std::setprecision(12)
             << ap_estimate("0", table) << "," << ctm_value("0", table) << "\n";
    CHECK(query.output == expected.str());
    CHECK(table.counts.at("0") == 1000);

    // Absent key: not-in-support, exit 3.
    CHECK(run_cli("ctm query --table " + full.string() + " 010101010101").exit_code == 3);
    fs::remove_all(dir);
}

TEST_CASE("bdm command evaluates grid files against a table") {
    const fs::path dir = temp_dir();
    const fs::path table = kFixtures / "ctm_3_2_2d_b200.ctm";
    const fs::path grid_path = dir / "zeros.txt";
    {
        std::ofstream grid(grid_path);
        for (int r = 0; r < 8; ++r) {
            grid << "00000000\n";
        }
    }
    const CommandResult res =
        run_cli("bdm --table " + table.string() + " -i " + grid_path.string() + " --d 2");
    CHECK(res.exit_code == 0);
    // 16 identical zero blocks: K(2x2 zeros) + log2(16).
    const BaseTable base = BaseTable::from_file(table);
    const double expected = base.lookup("2x2:0000").value() + 4.0;
    std::istringstream out(res.output);
    std::string line;
    std::getline(out, line);  // # config=...
    std::getline(out, line);  // header
    CHECK(line == "input_id,entropy,bdm,d,boundary");
    std::getline(out, line);
    std::istringstream row(line);
    std::string id, entropy, bdm_text;
    std::getline(row, id, ',');
    std::getline(row, entropy, ',');
    std::getline(row, bdm_text, ',');
    CHECK(std::stod(bdm_text) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(std::stod(entropy) == doctest::Approx(0.0));

    // Indivisible input under Exact: dimension error, exit 4.
    const fs::path ten = dir / "ten.txt";
    {
        std::ofstream grid(ten);
        for (int r = 0; r < 10; ++r) {
            grid << "1010101010\n";
        }
    }
    CHECK(run_cli("bdm --table " + table.string() + " -i " + ten.string() + " --d 4").exit_code ==
          4);
    // Missing block: exit 3 (not in the table's support).
    CHECK(run_cli("bdm --table " + table.string() + " -i " + grid_path.string() + " --d 4")
              .exit_code == 3);
    fs::remove_all(dir);
}

TEST_CASE("aid command writes deterministic reports") {
    const fs::path dir = temp_dir();
    const fs::path table = kFixtures / "ctm_3_2_2d_b200.ctm";
    const fs::path k4 = dir / "k4.txt";
    {
        std::ofstream out(k4);
        out << "0111\n1011\n1101\n1110\n";
    }
    const std::string base_cmd = "aid --table " + table.string() + " -i " + k4.string() +
                                 " --kind graph --family edges --d 2 --boundary pad";
    const CommandResult a = run_cli(base_cmd + " -o " + (dir / "a.csv").string());
    CHECK(a.exit_code == 0);
    const CommandResult b = run_cli(base_cmd + " -o " + (dir / "b.csv").string() + " --json " +
                                    (dir / "b.json").string());
    CHECK(b.exit_code == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));

    std::istringstream csv(slurp(dir / "a.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line.rfind("# config=", 0) == 0);
    std::getline(csv, line);
    CHECK(line == "element,delta,abs_delta,class,sign");
    size_t rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
    }
    CHECK(rows == 6);  // K4 has 6 edges

    const json report = json::parse(slurp(dir / "b.json"));
    CHECK(report["entries"].size() == 6);
    CHECK(report["signature"].size() == 6);

    // Grid flips: report length equals the cell count.
    const CommandResult flips = run_cli("aid --table " + table.string() + " -i " + k4.string() +
                                        " --kind grid --family flips --d 2 --boundary pad");
    CHECK(flips.exit_code == 0);
    size_t flip_rows = 0;
    std::istringstream fcsv(flips.output);
    while (std::getline(fcsv, line)) {
        ++flip_rows;
    }
    CHECK(flip_rows == 2 + 16);
    fs::remove_all(dir);
}

TEST_CASE("bare table names resolve through SOFTSPACE_TABLE_DIR") {
    const std::string env = "SOFTSPACE_TABLE_DIR=" + kFixtures.string() + " ";
    const std::string command =
        env + kCli + " ctm query --table ctm_3_2_2d_b200.ctm 1x1:0 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 1024> buffer;
    std::string output;
    size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        output.append(buffer.data(), n);
    }
    const int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(output.rfind("string,count,ap,ctm\n1x1:0,11881376,", 0) == 0);
    // Without the env var the bare name does not resolve.
    CHECK(run_cli("ctm query --table ctm_3_2_2d_b200.ctm 1x1:0").exit_code == 5);
}

TEST_CASE("config files supply defaults and flags override them") {
    const fs::path dir = temp_dir();
    const fs::path config = dir / "run.ini";
    {
        std::ofstream out(config);
        out << "[run-space]\nstates=2\nsymbols=2\nbudget=123\n";
    }
    const CommandResult from_file =
        run_cli("--config " + config.string() + " run-space");
    CHECK(from_file.exit_code == 0);
    CHECK(json::parse(from_file.output)["budget"] == 123);

    const CommandResult overridden =
        run_cli("--config " + config.string() + " run-space -b 77");
    CHECK(overridden.exit_code == 0);
    CHECK(json::parse(overridden.output)["budget"] == 77);

    // Unknown keys are rejected as a usage error.
    {
        std::ofstream out(config, std::ios::app);
        out << "no_such_option=1\n";
    }
    CHECK(run_cli("--config " + config.string() + " run-space").exit_code == 2);
    fs::remove_all(dir);
}

TEST_CASE("eca command emits grids and validates the rule") {
    const CommandResult identity = run_cli("eca --rule 204 --steps 3 --init 0110");
    CHECK(identity.exit_code == 0);
    CHECK(identity.output == "0110\n0110\n0110\n0110\n");
    CHECK(run_cli("eca --rule 256 --steps 3").exit_code == 2);

    const fs::path dir = temp_dir();
    const fs::path grid = dir / "eca.txt";
    CHECK(run_cli("eca --rule 110 --width 16 --steps 16 -o " + grid.string()).exit_code == 0);
    std::istringstream out(slurp(grid));
    std::string line;
    std::getline(out, line);
    CHECK(line.rfind("# config=", 0) == 0);
    size_t rows = 0;
    while (std::getline(out, line)) {
        REQUIRE(line.size() == 16);
        ++rows;
    }
    CHECK(rows == 17);
    fs::remove_all(dir);
}

TEST_CASE("the full pipeline is byte-identical across runs and thread counts") {
    const fs::path dir = temp_dir();
    const fs::path base = kFixtures / "ctm_3_2_2d_b200.ctm";
    auto pipeline = [&](const std::string& tag, const std::string& threads) {
        const fs::path table = dir / ("t" + tag + ".ctm");
        const fs::path grid = dir / ("g" + tag + ".txt");
        const fs::path bdm_out = dir / ("b" + tag + ".txt");
        const fs::path aid_out = dir / ("a" + tag + ".csv");
        const fs::path ppm = dir / ("f" + tag + ".ppm");
        CHECK(run_cli("ctm build -n 3 -m 2 -d 2 -b 50 -r 0:300000 -t " + threads + " -o " +
                      table.string())
                  .exit_code == 0);
        CHECK(run_cli("eca --rule 30 --width 8 --steps 7 -o " + grid.string()).exit_code == 0);
        const CommandResult bdm_res = run_cli("bdm --table " + base.string() + " -i " +
                                              grid.string() + " --d 2 --boundary pad");
        CHECK(bdm_res.exit_code == 0);
        std::ofstream(bdm_out) << bdm_res.output;
        CHECK(run_cli("aid --table " + base.string() + " -i " + grid.string() +
                      " --family flips --d 2 --boundary pad -o " + aid_out.string())
                  .exit_code == 0);
        CHECK(run_cli("render -n 2 -m 2 -b 100 -t " + threads + " -o " + ppm.string())
                  .exit_code == 0);
        return slurp(table) + slurp(grid) + slurp(bdm_out) + slurp(aid_out) + slurp(ppm);
    };
    const std::string first = pipeline("1", "1");
    const std::string second = pipeline("2", "2");
    CHECK(first == second);
    fs::remove_all(dir);
}

TEST_CASE("render reproduces the frozen golden field byte for byte") {
    const fs::path dir = temp_dir();
    const fs::path ppm = dir / "field.ppm";
    const fs::path csv = dir / "field.csv";
    CHECK(run_cli("render -n 2 -m 2 -b 500 --level 5 -o " + ppm.string() + " --csv " +
                  csv.string())
              .exit_code == 0);
    CHECK(slurp(ppm) == slurp(fs::path(SOFTSPACE_GOLDEN_DIR) / "field_2_2_b500_k5.ppm"));

    std::istringstream sidecar(slurp(csv));
    std::string line;
    std::getline(sidecar, line);
    CHECK(line.rfind("# config=", 0) == 0);
    std::getline(sidecar, line);
    CHECK(line == "index,x,y,steps,halted");

    // A range too large for the level is a usage error.
    CHECK(run_cli("render -n 2 -m 2 -b 100 --level 2 -o " + ppm.string()).exit_code == 2);
    fs::remove_all(dir);
}
