// End-to-end tests of the sharpe-bound executable.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <sharpe_bound/csv.hpp>

using Catch::Approx;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(SHARPE_BOUND_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

// "key   value" report lines.
std::map<std::string, std::string> fields(const std::string& out) {
    std::map<std::string, std::string> m;
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        std::string value;
        if (ls >> key >> value) m[key] = value;
    }
    return m;
}

double num(const std::map<std::string, std::string>& m, const std::string& key) {
    const auto it = m.find(key);
    REQUIRE(it != m.end());
    return std::stod(it->second);
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) rows.push_back(sharpe_bound::csv::split(line));
    return rows;
}

struct TempDir {
    fs::path path = fs::temp_directory_path() / ("sharpe_bound_cli_" + std::to_string(::getpid()));
    TempDir() { fs::create_directories(path); }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content = "") const {
        const auto p = path / name;
        if (!content.empty()) std::ofstream(p) << content;
        return p.string();
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli ratio", "[cli]") {
    TempDir dir;
    const auto pair = run("ratio " + dir.file("pair.csv", "return\n0.1\n-0.1\n"));
    CHECK(pair.code == 0);
    CHECK(num(fields(pair.out), "sharpe") == Approx(0.0).margin(1e-6));
    CHECK(pair.out.find("WARNING") == std::string::npos);

    std::string det = "return\n";
    for (int i = 0; i < 9999; ++i) det += "0.05\n";
    det += "-1\n";
    const auto anomaly = run("ratio " + dir.file("det.csv", det));
    CHECK(anomaly.code == 0);
    CHECK(num(fields(anomaly.out), "sharpe") == Approx(4.752142).margin(1e-6));
    CHECK(num(fields(anomaly.out), "wealth_multiple") == 0.0);
    CHECK(anomaly.out.find("WARNING") != std::string::npos);

    CHECK(run("ratio " + dir.file("one.csv", "return\n0.1\n")).code == 2);
    CHECK(run("ratio " + dir.file("bad.csv", "return\n0.1\n-1.01\n")).code == 3);
    CHECK(run("ratio " + dir.file("mal.csv", "return\n0.1\nfoo\n")).code == 2);
    CHECK(run("ratio " + dir.file("hdr.csv", "value\n0.1\n0.2\n")).code == 2);
    CHECK(run("ratio " + (dir.path / "missing.csv").string()).code == 2);
    CHECK(run("ratio --no-such-flag x").code == 2);
    CHECK(run("--convention n-2 ratio x").code == 2);
    CHECK(run("").code == 2);
}

TEST_CASE("cli frontier", "[cli]") {
    const auto f = fields(run("frontier 0.5 --ratio sharpe --bound one-sided").out);
    CHECK(num(f, "value") == Approx(0.424).margin(0.002));
    CHECK(num(f, "c_star") == Approx(8.40).margin(0.1));
    CHECK(num(f, "alpha_star") == Approx(0.236).margin(0.005));

    const auto g = fields(run("frontier 0.2 --ratio sortino --bound two-sided").out);
    CHECK(num(g, "value") == Approx(0.136).margin(0.002));
    CHECK(num(g, "alpha_star") == Approx(0.550).margin(0.005));

    CHECK(run("frontier 1.0 --ratio sharpe --bound one-sided").code == 3);
    CHECK(run("frontier 0 --ratio sharpe").code == 3);
    CHECK(run("frontier 0.5 --ratio calmar").code == 2);
}

TEST_CASE("cli table matches the reference under both conventions", "[cli]") {
    TempDir dir;
    for (const std::string which : {"F1", "F2", "G"}) {
        const auto pop_csv = dir.file(which + "_n.csv");
        const auto smp_csv = dir.file(which + "_n1.csv");
        const auto pop = run("table " + which + " --csv " + pop_csv);
        const auto smp = run("--convention n-1 table " + which + " --csv " + smp_csv);
        CHECK(pop.code == 0);
        CHECK(smp.code == 0);
        CHECK(pop.out.find("MISMATCH") == std::string::npos);
        const auto a = read_csv(slurp(pop_csv));
        const auto b = read_csv(slurp(smp_csv));
        REQUIRE(a.size() == b.size());
        CHECK(a.size() == (which == "F1" ? 15u : which == "F2" ? 7u : 13u));
        for (std::size_t i = 1; i < a.size(); ++i) {
            CHECK(std::abs(std::stod(a[i][2]) - std::stod(b[i][2])) <= 1e-9);
            CHECK(a[i].back() == "1");
        }
    }
    CHECK(run("table F3").code == 2);
}

TEST_CASE("cli curve", "[cli]") {
    TempDir dir;
    const auto left = dir.file("left.csv");
    REQUIRE(run("curve --ratio sharpe --bound one-sided --from 0.001 --to 0.9 --points 200 --out " + left).code == 0);
    const auto rows = read_csv(slurp(left));
    REQUIRE(rows.size() == 201);
    CHECK(rows[0] == std::vector<std::string>{"B", "value", "c_star", "alpha_star"});
    double prev = -1;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double v = std::stod(rows[i][1]);
        CHECK(v >= prev - 1e-9);
        prev = v;
        const double b0 = std::stod(rows[i][0]);
        if (i + 1 < rows.size() && b0 <= 0.5 && std::stod(rows[i + 1][0]) > 0.5) {
            const double b1 = std::stod(rows[i + 1][0]);
            const double v1 = std::stod(rows[i + 1][1]);
            CHECK(v + (v1 - v) * (0.5 - b0) / (b1 - b0) == Approx(0.424).margin(0.002));
        }
    }

    const auto g1 = read_csv(run("curve --ratio sortino --bound one-sided").out);
    REQUIRE(g1.size() == 201);
    for (std::size_t i = 1; i < g1.size(); ++i) CHECK(std::stod(g1[i][1]) > 1.0);
    CHECK(std::stod(g1[1][0]) == 0.001);
    CHECK(std::stod(g1.back()[0]) == 0.9);

    const auto right = read_csv(run("curve --panel right").out);
    CHECK(std::stod(right[1][0]) == 0.9);
    CHECK(std::stod(right.back()[0]) == 0.999);

    const auto one = read_csv(run("curve --ratio sharpe --bound two-sided --from 0.1 --to 0.1 --points 1").out);
    REQUIRE(one.size() == 2);
    CHECK(std::stod(one[1][1]) == Approx(0.050).margin(0.002));

    const auto svg = dir.file("f2.svg");
    CHECK(run("curve --bound two-sided --format svg --out " + svg).code == 0);
    CHECK(slurp(svg).find("</svg>") != std::string::npos);
    CHECK(run("curve --out /nonexistent-dir/x.csv").code == 2);
    CHECK(run("curve --format png").code == 2);
    CHECK(run("curve --from 0.5 --to 1.2 --points 3").code == 3);
}

TEST_CASE("cli oracle", "[cli]") {
    const auto two = fields(run("oracle 0.5 2 --ratio sharpe --bound one-sided").out);
    CHECK(num(two, "best") == Approx(1.0 / 3.0).margin(1e-5));
    CHECK(num(two, "gap") == Approx(0.0907).margin(2e-4));

    const auto five = fields(run("oracle 0.5 5").out);
    CHECK(num(five, "best") <= 0.424);
    CHECK(num(five, "gap") >= 0.0);

    CHECK(num(fields(run("oracle 0.3 4 --bound two-sided").out), "best") <= 0.154);
    CHECK(num(fields(run("oracle 0.5 10000 --method two-level").out), "gap") < 0.01 * 0.424);
    CHECK(run("oracle 0.5 3 --method random --samples 0").code == 3);
    CHECK(run("oracle 0.5 7").code == 2);
    CHECK(run("oracle 1.2 3").code == 3);
}

TEST_CASE("cli demo and CSV round trip", "[cli]") {
    const auto det = fields(run("demo det 10000").out);
    CHECK(num(det, "sharpe") == Approx(4.752).margin(5e-4));
    CHECK(num(det, "wealth_multiple") == 0.0);
    CHECK(num(fields(run("demo det 21").out), "sharpe") == Approx(0.0).margin(1e-6));

    TempDir dir;
    const auto traj = dir.file("traj.csv");
    const auto rets = dir.file("returns.csv");
    const auto iid = run("demo iid 1000 0.05 100000 --seed 7 --out " + traj + " --returns-out " + rets);
    REQUIRE(iid.code == 0);
    const auto f = fields(iid.out);
    CHECK(std::abs(num(f, "sharpe") - 1.4749) < 0.15);
    CHECK(num(f, "wealth_multiple") == 0.0);

    const auto rows = read_csv(slurp(traj));
    REQUIRE(rows.size() > 2);
    CHECK(rows[0] == std::vector<std::string>{"n", "sharpe", "sortino", "wealth"});
    CHECK(rows.back()[0] == "100000");

    const auto back = fields(run("ratio --digits 17 " + rets).out);
    CHECK(std::abs(num(back, "sharpe") - std::stod(rows.back()[1])) <= 1e-12);
    CHECK(std::abs(num(back, "sortino") - std::stod(rows.back()[2])) <= 1e-12);
    CHECK(num(back, "count") == 100000);

    // Same seed, same output.
    CHECK(run("demo iid 1000 0.05 20000 --seed 3").out == run("demo iid 1000 0.05 20000 --seed 3").out);
    CHECK(run("demo det 1").code == 2);
    CHECK(run("demo iid 1 0.05 100").code == 2);
    CHECK(run("demo iid 10 -0.5 100").code == 2);
}
