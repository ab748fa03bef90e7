#include <doctest.h>

#include <sstream>
#include <string>

#include "supershape/error.hpp"
#include "supershape/mesh_io.hpp"

using namespace supershape;

namespace {

// Minimal reference reader for the subset of OBJ we emit.
struct ParsedObj {
    std::vector<Vec3> v, vn;
    std::vector<std::array<std::size_t, 3>> f;
};

ParsedObj parse_obj(const std::string& text) {
    ParsedObj out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v" || tag == "vn") {
            double x, y, z;
            ls >> x >> y >> z;
            (tag == "v" ? out.v : out.vn).emplace_back(x, y, z);
        } else if (tag == "f") {
            std::array<std::size_t, 3> idx{};
            for (auto& i : idx) {
                std::string corner;
                ls >> corner;
                i = std::stoul(corner.substr(0, corner.find('/'))) - 1;
            }
            out.f.push_back(idx);
        }
    }
    return out;
}

std::size_t count_prefix(const std::string& text, const std::string& prefix) {
    std::size_t n = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) n += line.rfind(prefix, 0) == 0;
    return n;
}

}  // namespace

TEST_CASE("single-vertex mesh writes one v and one vn line") {
    TriangleMesh mesh;
    mesh.vertices = {Vec3(1, -2.5, 0.125)};
    mesh.normals = {Vec3(0, 0, 1)};
    std::ostringstream out;
    export_obj(mesh, out);
    CHECK(out.str() == "v 1.000000 -2.500000 0.125000\nvn 0.000000 0.000000 1.000000\n");
}

TEST_CASE("unit-sphere OBJ has one v line per grid vertex") {
    const auto mesh = tessellate(SuperformulaParams::sphere(), SuperformulaParams::sphere(), {8, 8});
    std::ostringstream out;
    export_obj(mesh, out);
    const std::string text = out.str();
    CHECK(count_prefix(text, "v ") == 81);
    CHECK(count_prefix(text, "vn ") == 81);
    CHECK(count_prefix(text, "f ") == 112);
    CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("OBJ round-trips through a reference reader") {
    const auto mesh = tessellate({6, 1, 1, 0.7, 1.5, 1.5}, {3, 1.2, 0.8, 2, 4, 4}, {20, 14});
    std::ostringstream out;
    export_obj(mesh, out);
    const auto parsed = parse_obj(out.str());
    REQUIRE(parsed.v.size() == mesh.vertices.size());
    REQUIRE(parsed.vn.size() == mesh.normals.size());
    REQUIRE(parsed.f.size() == mesh.triangles.size());
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) CHECK((parsed.v[i] - mesh.vertices[i]).norm() < 1e-5);
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) CHECK(parsed.f[i] == mesh.triangles[i]);

    std::ostringstream again;
    export_obj(mesh, again);
    CHECK(again.str() == out.str());
}

TEST_CASE("OBJ export reports a failed stream") {
    const auto mesh = tessellate(SuperformulaParams::sphere(), SuperformulaParams::sphere(), {4, 4});
    std::ostringstream out;
    out.setstate(std::ios::badbit);
    CHECK_THROWS_AS(export_obj(mesh, out), Error);
}
