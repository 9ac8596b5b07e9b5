#include <unistd.h>

#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "fixtures.hpp"
#include "isoclust/cluster_io.hpp"
#include "isoclust/errors.hpp"
#include "isoclust/svg.hpp"

using namespace isoclust;

namespace {

std::vector<DiscreteCluster> samples() {
    std::vector<DiscreteCluster> out;
    out.push_back(build_standard_lens(Window::disk(2.0), 64));
    out.push_back(build_standard_lens(Window::rect(2.0, 1.5), 33));
    out.push_back(build_double_bubble(solve_double_bubble(1.0), Window::disk(2.0), 64));
    out.push_back(build_double_bubble(solve_double_bubble(1e4), Window::disk(2.0), 128));
    out.push_back(build_conjecture_seed(ConjectureShape::peanut, Window::disk(3.0), 32));
    out.push_back(build_conjecture_seed(ConjectureShape::chalk, Window::disk(3.0), 32));
    DiscreteCluster loop;
    loop.window = Window::disk(2.0);
    loop.chambers = {ChamberSpec::make_proper("E", 1.0), ChamberSpec::make_improper("F")};
    loop.interfaces.push_back({"loop", "E", "F", fixtures::lens_loop(standard_lens_radius(), {0.1, 0.2}, 50), {}});
    out.push_back(loop);
    return out;
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
    return n;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("json round trip is exact") {
    for (const DiscreteCluster& c : samples()) {
        const std::string text = to_json(c);
        const DiscreteCluster back = cluster_from_json(text);
        CHECK(back == c);
        CHECK(to_json(back) == text);
        CHECK(validate(back).passed());
    }
}

TEST_CASE("json schema fields") {
    const std::string text = to_json(samples().back());
    CHECK(text.find("\"window\": {\"disk\": {\"radius\": 2}}") != std::string::npos);
    CHECK(text.find("\"label\": \"E\", \"proper\": true, \"target_area\": 1}") != std::string::npos);
    CHECK(text.find("\"label\": \"F\", \"proper\": false}") != std::string::npos);
    CHECK(text.find("\"nodes\": []") != std::string::npos);
    const std::string lens = to_json(samples().front());
    CHECK(lens.find("\"kind\": \"junction\"") != std::string::npos);
    CHECK(lens.find("\"kind\": \"anchor\"") != std::string::npos);
    char x17[32];
    std::snprintf(x17, sizeof x17, "%.17g", samples().front().nodes.front().position.x);
    CHECK(std::string(x17).size() >= 18);
    CHECK(lens.find(std::string("\"x\": ") + x17 + ",") != std::string::npos);
}

TEST_CASE("malformed json is rejected") {
    CHECK_THROWS_AS(cluster_from_json("{"), StructuralError);
    CHECK_THROWS_AS(cluster_from_json("[]"), StructuralError);
    CHECK_THROWS_AS(cluster_from_json(R"({"window": {"disk": {"radius": 1}}})"), StructuralError);
    CHECK_THROWS_AS(cluster_from_json(R"({"window": {"disk": {"radius": -1}}, "chambers": [], "nodes": [], "interfaces": []})"),
                    DomainError);
    CHECK_THROWS_AS(cluster_from_json(R"({"window": {"hex": {}}, "chambers": [], "nodes": [], "interfaces": []})"),
                    StructuralError);
    CHECK_THROWS_AS(
        cluster_from_json(R"({"window": {"disk": {"radius": 1}}, "chambers": [{"label": "A", "proper": true}], "nodes": [], "interfaces": []})"),
        StructuralError);
    CHECK_THROWS_AS(
        cluster_from_json(R"({"window": {"disk": {"radius": 1}}, "chambers": [], "nodes": [{"id": "J", "x": 0, "y": 0, "kind": "vertex"}], "interfaces": []})"),
        StructuralError);
    CHECK_THROWS_AS(
        cluster_from_json(R"({"window": {"disk": {"radius": 1}}, "chambers": [], "nodes": [], "interfaces": [{"id": "a", "left": "A", "right": "B", "nodes": ["J"], "points": []}]})"),
        StructuralError);
    CHECK_THROWS_AS(
        cluster_from_json(R"({"window": {"disk": {"radius": 1}}, "chambers": [], "nodes": [], "interfaces": [{"id": "a", "left": "A", "right": "B", "nodes": [], "points": [[0]]}]})"),
        StructuralError);
}

TEST_CASE("files are written atomically") {
    const auto dir = std::filesystem::temp_directory_path() / ("isoclust_io_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto file = dir / "lens.json";
    const DiscreteCluster c = samples().front();
    save_cluster(c, file.string());
    save_cluster(c, file.string());
    CHECK(load_cluster(file.string()) == c);
    int entries = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
    CHECK(entries == 1);
    CHECK_THROWS_AS(write_file_atomic((dir / "missing" / "x.txt").string(), "x"), DomainError);
    CHECK_THROWS_AS(load_cluster((dir / "missing.json").string()), DomainError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("svg structure") {
    for (const DiscreteCluster& c : samples()) {
        const std::string svg = to_svg(c);
        CHECK(svg == to_svg(c));
        CHECK(count(svg, "<path ") == c.interfaces.size() + 1);
        CHECK(count(svg, "class=\"window\"") == 1);
        CHECK(svg.find("version=\"1.1\"") != std::string::npos);
        CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
    }
    const DiscreteCluster lens = samples().front();
    CHECK(count(to_svg(lens), "<polygon") == 1);
    SvgStyle plain;
    plain.shade_proper = false;
    CHECK(count(to_svg(lens, plain), "<polygon") == 0);
}

TEST_CASE("svg golden prefix") {
    const std::string svg = to_svg(samples().front());
    CHECK(svg.rfind("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" "
                    "version=\"1.1\" width=\"704.0\" height=\"704.0\" viewBox=\"0 0 704.0 704.0\">\n",
                    0) == 0);
}

}  // TEST_SUITE
