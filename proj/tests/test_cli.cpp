#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli_args(const std::vector<std::string>& args) {
    std::vector<const char*> argv = {"sympca"};
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = sympca::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return CliResult{code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("sympca_cli_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

long count_lines(const std::string& text) {
    long lines = 0;
    for (char c : text) {
        if (c == '\n') {
            ++lines;
        }
    }
    return lines;
}

} // namespace

TEST_CASE("run writes the documented row count and header") {
    TempDir dir;
    const std::string out = dir.file("t.csv");
    const CliResult r = run_cli_args({"run", "--rule", "n2s", "--preset", "spaced",
                                      "--backprojection", "exact", "--gamma", "1", "--steps",
                                      "20000", "--subsample", "100", "--seed", "7", "--out",
                                      out});
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(out);
    CHECK(count_lines(csv) == 202); // header + step 0 + 200 samples
    CHECK(csv.rfind("step,e_o,e_p\n", 0) == 0);
    CHECK(r.out.find("\"emitted_rows\":201") != std::string::npos);
}

TEST_CASE("m2s with zero weight reproduces n2s byte for byte") {
    TempDir dir;
    const std::string a = dir.file("a.csv");
    const std::string b = dir.file("b.csv");
    CHECK(run_cli_args({"run", "--rule", "n2s", "--steps", "2000", "--seed", "7", "--out", a})
              .exit_code == 0);
    CHECK(run_cli_args({"run", "--rule", "m2s", "--alpha", "0", "--steps", "2000", "--seed",
                        "7", "--out", b})
              .exit_code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("run output is deterministic for a fixed seed") {
    TempDir dir;
    const std::string a = dir.file("a.csv");
    const std::string b = dir.file("b.csv");
    const std::vector<std::string> args = {"run",    "--rule", "m2s",  "--alpha", "5",
                                           "--steps", "1000",   "--seed", "13"};
    auto with_out = [&args](const std::string& path) {
        std::vector<std::string> a2 = args;
        a2.push_back("--out");
        a2.push_back(path);
        return a2;
    };
    CHECK(run_cli_args(with_out(a)).exit_code == 0);
    CHECK(run_cli_args(with_out(b)).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("run with zero steps emits the single initial row") {
    TempDir dir;
    const std::string out = dir.file("t.csv");
    CHECK(run_cli_args({"run", "--steps", "0", "--out", out}).exit_code == 0);
    CHECK(count_lines(slurp(out)) == 2);
}

TEST_CASE("usage errors name the offending flag") {
    TempDir dir;
    const CliResult bad_rule = run_cli_args({"run", "--rule", "bogus", "--out", dir.file("x")});
    CHECK(bad_rule.exit_code == 1);
    CHECK(bad_rule.err.find("--rule") != std::string::npos);

    const CliResult bad_preset =
        run_cli_args({"run", "--preset", "wild", "--out", dir.file("x")});
    CHECK(bad_preset.exit_code == 1);
    CHECK(bad_preset.err.find("--preset") != std::string::npos);

    const CliResult bad_mode =
        run_cli_args({"run", "--backprojection", "sideways", "--out", dir.file("x")});
    CHECK(bad_mode.exit_code == 1);
    CHECK(bad_mode.err.find("--backprojection") != std::string::npos);

    const CliResult bad_n = run_cli_args({"run", "--n", "4", "--out", dir.file("x")});
    CHECK(bad_n.exit_code == 1);
    CHECK(bad_n.err.find("--n") != std::string::npos);
}

TEST_CASE("custom eigenvalue lists are accepted") {
    TempDir dir;
    const std::string out = dir.file("custom.csv");
    const CliResult r = run_cli_args({"run", "--eigenvalues", "5,4,3,2,1", "--m", "2",
                                      "--steps", "100", "--out", out});
    CHECK(r.exit_code == 0);
    CHECK(count_lines(slurp(out)) == 3); // header, step 0, step 100
}

TEST_CASE("config file supplies defaults and flags override it") {
    TempDir dir;
    const std::string config = dir.file("config.json");
    {
        std::ofstream file(config);
        file << R"({"rule":"m2s","alpha":5,"steps":300,"subsample":100,"seed":13,"out":")"
             << dir.file("from_config.csv") << R"("})";
    }
    const CliResult defaults = run_cli_args({"run", "--config", config});
    CHECK(defaults.exit_code == 0);
    CHECK(count_lines(slurp(dir.file("from_config.csv"))) == 5); // header + 0,100,200,300

    const CliResult overridden =
        run_cli_args({"run", "--config", config, "--steps", "100", "--out",
                      dir.file("overridden.csv")});
    CHECK(overridden.exit_code == 0);
    CHECK(count_lines(slurp(dir.file("overridden.csv"))) == 3);
}

TEST_CASE("divergent settings exit with the divergence code") {
    TempDir dir;
    const CliResult r = run_cli_args({"run", "--rule", "m2s", "--alpha", "3000", "--gamma",
                                      "1", "--backprojection", "none", "--steps", "1000",
                                      "--out", dir.file("div.csv")});
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("divergence") != std::string::npos);
}

TEST_CASE("detsweep output format and committed-seed sign changes") {
    TempDir dir;
    const std::string out = dir.file("sweep.csv");
    const CliResult r = run_cli_args({"detsweep", "--out", out});
    CHECK(r.exit_code == 0);

    const std::string csv = slurp(out);
    CHECK(csv.rfind("alpha,det\n", 0) == 0);
    CHECK(csv.find("\n0.0,") != std::string::npos);
    CHECK(csv.find("\n20.0,") != std::string::npos);
    CHECK(csv.find("# sign-changes: ") != std::string::npos);
    CHECK(csv.find("# sign-changes: 0") == std::string::npos);

    long data_rows = 0;
    std::istringstream lines(csv);
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line[0] != '#' && line.rfind("alpha", 0) != 0) {
            ++data_rows;
        }
    }
    CHECK(data_rows == 201);
}

TEST_CASE("detsweep with one column is constant in alpha") {
    TempDir dir;
    const std::string out = dir.file("sweep1.csv");
    CHECK(run_cli_args({"detsweep", "--m", "1", "--out", out}).exit_code == 0);
    const std::string csv = slurp(out);
    CHECK(csv.find("# sign-changes: 0") != std::string::npos);

    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    double first = 0.0;
    bool have_first = false;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const double value = std::stod(line.substr(line.find(',') + 1));
        if (!have_first) {
            first = value;
            have_first = true;
        }
        CHECK(std::fabs(value - first) <= 1e-12 * std::fabs(first));
    }
}

TEST_CASE("figure writes seven curves sharing the initial estimate, plus the plot") {
    TempDir dir;
    const CliResult r = run_cli_args({"figure", "--name", "spaced", "--mode", "exact",
                                      "--steps", "500", "--out-dir", dir.file("figs")});
    CHECK(r.exit_code == 0);

    const std::vector<std::string> labels = {"twj2s",  "n2s",     "m2s_a1", "m2s_a2",
                                             "m2s_a5", "m2s_a10", "m2s_a20"};
    std::string first_row;
    for (const std::string& label : labels) {
        const std::string path = dir.file("figs/spaced_exact_" + label + ".csv");
        REQUIRE(fs::exists(path));
        const std::string csv = slurp(path);
        CHECK(csv.rfind("# config: ", 0) == 0);
        CHECK(csv.find("\"seed\"") != std::string::npos);

        // Row for step 0 is identical across rules: same start.
        const std::size_t header_end = csv.find("step,e_o,e_p\n") + 13;
        const std::string row0 = csv.substr(header_end, csv.find('\n', header_end) - header_end);
        if (first_row.empty()) {
            first_row = row0;
        } else {
            CHECK(row0 == first_row);
        }
    }
    CHECK(fs::exists(dir.file("figs/spaced_exact.svg")));
    const std::string svg = slurp(dir.file("figs/spaced_exact.svg"));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("verify runs its suites and honors the filter and mutation hook") {
    const CliResult ok = run_cli_args({"verify"});
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("verification passed") != std::string::npos);

    const CliResult only = run_cli_args({"verify", "--only", "gradcheck"});
    CHECK(only.exit_code == 0);
    CHECK(only.out.find("gradcheck") != std::string::npos);
    CHECK(only.out.find("stability-signs") == std::string::npos);

    const CliResult unknown = run_cli_args({"verify", "--only", "nonsense"});
    CHECK(unknown.exit_code == 1);

    const CliResult mutated = run_cli_args({"verify", "--mutate", "arrangement-identity"});
    CHECK(mutated.exit_code == 3);
    CHECK(mutated.out.find("FAIL arrangement-identity") != std::string::npos);
}
