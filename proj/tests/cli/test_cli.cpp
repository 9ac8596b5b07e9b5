#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "isoclust/cluster_io.hpp"
#include "isoclust/exact_geometry.hpp"

using namespace isoclust;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + ISOCLUST_CLI + std::string(" ") + args + " 2>/dev/null";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string f; std::getline(in, f, sep);) out.push_back(f);
    return out;
}

/// Value printed after `key` on its own line.
double value_after(const std::string& out, const std::string& key) {
    for (const auto& l : lines(out))
        if (l.rfind(key, 0) == 0) return std::stod(l.substr(key.size()));
    FAIL("missing " << key);
    return 0;
}

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / ("isoclust_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator()(const std::string& name) const { return (dir / name).string(); }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("lens constants") {
    const Run r = run("lens");
    CHECK(r.code == 0);
    CHECK(value_after(r.out, "R ") == doctest::Approx(0.902268).epsilon(1e-6));
    CHECK(value_after(r.out, "area ") == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(value_after(r.out, "finite perimeter ") == doctest::Approx(4 * M_PI * standard_lens_radius() / 3).epsilon(1e-15));

    const Run big = run("lens --radius 2");
    CHECK(big.code == 0);
    CHECK(value_after(big.out, "area ") == doctest::Approx(4 * lens_from_radius(1.0).area).epsilon(1e-14));
}

TEST_CASE("lens json re-validates") {
    Scratch tmp;
    const Run r = run("lens --resolution 128 --json " + tmp("lens.json") + " --svg " + tmp("lens.svg"));
    CHECK(r.code == 0);
    const DiscreteCluster c = load_cluster(tmp("lens.json"));
    CHECK(validate(c).passed());
    const std::string svg = slurp(tmp("lens.svg"));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(run("lens --resolution 128 --svg -").out.find(svg) != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(run("").code == 2);
    CHECK(run("lens --bogus").code == 2);
    CHECK(run("lens --radius -1").code == 2);
    CHECK(run("double-bubble").code == 2);
    CHECK(run("double-bubble --area -1").code == 2);
    CHECK(run("double-bubble --area 0").code == 2);
    CHECK(run("sweep --areas 100,10").code == 2);
    CHECK(run("sweep --areas 10 --window-r 1").code == 2);
    CHECK(run("conjecture --shape donut").code == 2);
    CHECK(run("flow --input /nonexistent/x.json").code == 2);
    CHECK(run("flow --input x.json --dt 0").code == 2);
}

TEST_CASE("double bubble") {
    const Run flat = run("double-bubble --area 1");
    CHECK(flat.code == 0);
    CHECK(flat.out.find("r0             inf (flat middle interface)") != std::string::npos);
    CHECK(value_after(flat.out, "r1 ") == doctest::Approx(1 / std::sqrt(2 * M_PI / 3 + std::sqrt(3.0) / 4)).epsilon(1e-12));

    const Run big = run("double-bubble --area 10000");
    CHECK(big.code == 0);
    CHECK(std::fabs(value_after(big.out, "theta0 ") - M_PI / 3) < 0.05);
    CHECK(value_after(big.out, "residual norm ") < 1e-10);

    Scratch tmp;
    CHECK(run("double-bubble --area 3 --resolution 256 --json " + tmp("db.json")).code == 0);
    CHECK(validate(load_cluster(tmp("db.json"))).passed());
}

TEST_CASE("sweep csv") {
    Scratch tmp;
    const Run one = run("sweep --areas 100 --resolution 512");
    CHECK(one.code == 0);
    const auto rows = lines(one.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "A,r0,r1,theta0,theta1,gap_r0,gap_r1,gap_theta0,gap_theta1,distance_B2,perimeter_B2");

    CHECK(run("sweep --areas 10,100,1000,10000 --resolution 1024 --csv " + tmp("a.csv")).code == 0);
    CHECK(run("sweep --areas 10,100,1000,10000 --resolution 1024 --csv " + tmp("b.csv")).code == 0);
    const std::string a = slurp(tmp("a.csv"));
    CHECK(a == slurp(tmp("b.csv")));
    const auto table = lines(a);
    REQUIRE(table.size() == 5);
    const double lens_b2 = 4 * M_PI * standard_lens_radius() / 3 + 2 * (2 - std::sqrt(3.0) / 2 * standard_lens_radius());
    double prev = INFINITY;
    for (std::size_t i = 1; i < table.size(); ++i) {
        const auto f = split(table[i], ',');
        REQUIRE(f.size() == 11);
        const double d = std::stod(f[9]);
        CHECK(d < prev);
        prev = d;
        if (std::stod(f[0]) >= 100) CHECK(std::stod(f[10]) >= lens_b2 - 0.02);
    }
}

TEST_CASE("flow on a stationary input") {
    Scratch tmp;
    REQUIRE(run("lens --resolution 256 --json " + tmp("lens.json")).code == 0);
    const std::string args = "flow --input " + tmp("lens.json") + " --spacing 0.0063 --output " + tmp("out.json") +
                             " --report " + tmp("report.csv") + " --history " + tmp("hist.csv") + " --svg " +
                             tmp("out.svg");
    const Run r = run(args);
    CHECK(r.code == 0);
    const auto report = lines(slurp(tmp("report.csv")));
    REQUIRE(report.size() == 5);
    CHECK(report[0] ==
          "steps_taken,converged,final_perimeter,max_junction_angle_dev,max_area_drift,interface,curvature_mean,"
          "curvature_std");
    const auto f = split(report[1], ',');
    CHECK(std::stoi(f[0]) <= 5);
    CHECK(f[1] == "1");
    const auto hist = lines(slurp(tmp("hist.csv")));
    REQUIRE(hist.size() >= 2);
    CHECK(hist[0] == "step,perimeter");
    CHECK(std::fabs(std::stod(split(hist.back(), ',')[1]) - std::stod(split(hist[1], ',')[1])) < 1e-4);
    CHECK(validate(load_cluster(tmp("out.json"))).passed());

    const std::string first = slurp(tmp("report.csv"));
    CHECK(run(args).code == 0);
    CHECK(slurp(tmp("report.csv")) == first);
}

TEST_CASE("flow topology error") {
    // two bubbles inflated into each other by the first area projection
    Scratch tmp;
    std::string pts_a, pts_b;
    for (int k = 0; k < 64; ++k) {
        const double t = 2 * M_PI * k / 64;
        char buf[128];
        std::snprintf(buf, sizeof buf, "%s[%.17g, %.17g]", k ? ", " : "", -0.35 + 0.3 * std::cos(t), 0.3 * std::sin(t));
        pts_a += buf;
        std::snprintf(buf, sizeof buf, "%s[%.17g, %.17g]", k ? ", " : "", 0.35 + 0.3 * std::cos(t), 0.3 * std::sin(t));
        pts_b += buf;
    }
    const std::string target = std::to_string(M_PI * 0.25);
    write_text(tmp("collide.json"),
               "{\"window\": {\"disk\": {\"radius\": 2}}, \"chambers\": [{\"label\": \"A\", \"proper\": true, "
               "\"target_area\": " + target + "}, {\"label\": \"B\", \"proper\": true, \"target_area\": " + target +
                   "}, {\"label\": \"F\", \"proper\": false}], \"nodes\": [], \"interfaces\": [{\"id\": \"a\", "
                   "\"left\": \"A\", \"right\": \"F\", \"nodes\": [], \"points\": [" + pts_a +
                   "]}, {\"id\": \"b\", \"left\": \"B\", \"right\": \"F\", \"nodes\": [], \"points\": [" + pts_b + "]}]}");
    CHECK(run("flow --input " + tmp("collide.json")).code == 4);
}

TEST_CASE("probe") {
    const Run none = run("probe --trials 0");
    CHECK(none.code == 0);
    CHECK(none.out.find("margin undefined") != std::string::npos);

    Scratch tmp;
    const Run a = run("probe --trials 1 --csv " + tmp("a.csv"));
    CHECK(a.code == 0);
    CHECK(value_after(a.out, "margin ") >= -1e-3 * value_after(a.out, "baseline "));
    CHECK(run("probe --trials 1 --csv " + tmp("b.csv")).code == 0);
    CHECK(slurp(tmp("a.csv")) == slurp(tmp("b.csv")));
    CHECK(lines(slurp(tmp("a.csv")))[1].rfind("20240229,", 0) == 0);

    const Run env = run("probe --trials 1 --csv " + tmp("c.csv"), "ISOCLUST_SEED=77");
    CHECK(env.code == 0);
    CHECK(lines(slurp(tmp("c.csv")))[1].rfind("77,", 0) == 0);
    CHECK(run("probe --trials 1 --seed 78 --csv " + tmp("d.csv"), "ISOCLUST_SEED=77").code == 0);
    CHECK(lines(slurp(tmp("d.csv")))[1].rfind("78,", 0) == 0);
    CHECK(run("probe --trials 1", "ISOCLUST_SEED=abc").code == 2);

    CHECK(run("probe --trials 1 --amplitude 1000").code == 5);
}

TEST_CASE("conjecture chalk") {
    Scratch tmp;
    const Run r = run("conjecture --shape chalk --report " + tmp("chalk.csv") + " --output " + tmp("chalk.json"));
    CHECK(r.code == 0);
    int triples = 0;
    for (const auto& l : lines(r.out)) {
        if (l.rfind("junction ", 0) != 0 || l.rfind("junction angle", 0) == 0) continue;
        ++triples;
        std::istringstream in(l.substr(9));
        std::string id;
        double a[3];
        in >> id >> a[0] >> a[1] >> a[2];
        for (double d : a) CHECK(std::fabs(d - 120.0) < 1.0);
    }
    CHECK(triples == 3);
    const auto csv = lines(slurp(tmp("chalk.csv")));
    REQUIRE(csv.size() == 2);
    const auto f = split(csv[1], ',');
    CHECK(f[0] == "chalk");
    CHECK(f[1] == "1");
    // four significant digits
    std::string digits;
    for (char ch : f[3])
        if (std::isdigit(static_cast<unsigned char>(ch))) digits += ch;
    CHECK(digits.size() == 4);
    CHECK(validate(load_cluster(tmp("chalk.json"))).passed());
}
