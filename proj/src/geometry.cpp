#include "supershape/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "supershape/error.hpp"

namespace supershape {

namespace {

using std::numbers::pi;

bool finite(const Vec3& v) { return std::isfinite(v.x()) && std::isfinite(v.y()) && std::isfinite(v.z()); }

void check_resolution(TessellationGrid res) {
    if (res.theta < kMinResolution || res.phi < kMinResolution) {
        throw Error(ErrorKind::invalid_resolution,
                    "resolution must be at least " + std::to_string(kMinResolution) + "x" +
                        std::to_string(kMinResolution) + ", got " + std::to_string(res.theta) + "x" +
                        std::to_string(res.phi));
    }
}

// Number of triangles emitted by grid row j (the quads between phi_j and phi_{j+1}).
std::size_t row_triangles(int j, TessellationGrid res) {
    const bool pole_row = j == 0 || j == res.phi - 1;
    return static_cast<std::size_t>(res.theta) * (pole_row ? 1 : 2);
}

std::size_t row_offset(int j, TessellationGrid res) {
    if (j == 0) return 0;
    return static_cast<std::size_t>(res.theta) * (2 * static_cast<std::size_t>(j) - 1);
}

void emit_row(int j, TessellationGrid res, std::array<std::size_t, 3>* out) {
    const std::size_t stride = static_cast<std::size_t>(res.theta) + 1;
    for (int i = 0; i < res.theta; ++i) {
        const std::size_t a = j * stride + i;      // (i, j)
        const std::size_t b = a + 1;               // (i+1, j)
        const std::size_t c = b + stride;          // (i+1, j+1)
        const std::size_t d = a + stride;          // (i, j+1)
        if (j == 0) {
            *out++ = {a, c, d};  // a and b are both the south pole
        } else if (j == res.phi - 1) {
            *out++ = {a, b, c};  // c and d are both the north pole
        } else {
            *out++ = {a, b, c};
            *out++ = {a, c, d};
        }
    }
}

// Power-of-two factor bringing the largest coordinate near 1, so face
// cross products cannot overflow while relative weights stay exact.
double normal_scale(const std::vector<Vec3>& vertices) {
    double max_abs = 0.0;
    for (const auto& v : vertices) max_abs = std::max(max_abs, v.cwiseAbs().maxCoeff());
    if (max_abs == 0.0) return 1.0;
    int exponent = 0;
    std::frexp(max_abs, &exponent);
    return std::ldexp(1.0, -exponent);
}

Vec3 face_normal(const TriangleMesh& mesh, std::size_t t, double scale) {
    const auto& tri = mesh.triangles[t];
    const Vec3 a = mesh.vertices[tri[0]] * scale;
    const Vec3 b = mesh.vertices[tri[1]] * scale;
    const Vec3 c = mesh.vertices[tri[2]] * scale;
    return (b - a).cross(c - a);  // length is twice the (scaled) area
}

Vec3 finish_normal(const Vec3& accumulated, const Vec3& position) {
    const double len = accumulated.stableNorm();
    if (len > 0.0 && std::isfinite(len)) return accumulated / len;
    const double radial = position.stableNorm();
    if (radial > 0.0 && std::isfinite(radial)) return position / radial;
    return Vec3::UnitZ();
}

// The grid duplicates surface points along the theta = +-pi seam (when r1
// closes) and across each pole row. Coincident copies share one normal:
// the sum over every face incident to that surface point.
void weld_duplicates(std::vector<Vec3>& accumulated, const std::vector<Vec3>& vertices, TessellationGrid res) {
    double max_abs = 0.0;
    for (const auto& v : vertices) max_abs = std::max(max_abs, v.cwiseAbs().maxCoeff());
    const double tol = 1e-9 * max_abs;
    const std::size_t stride = static_cast<std::size_t>(res.theta) + 1;
    auto same = [&](std::size_t a, std::size_t b) { return (vertices[a] - vertices[b]).cwiseAbs().maxCoeff() <= tol; };

    for (int j : {0, res.phi}) {
        const std::size_t first = j * stride;
        bool collapsed = true;
        for (std::size_t i = 1; i < stride && collapsed; ++i) collapsed = same(first, first + i);
        if (!collapsed) continue;
        Vec3 sum = Vec3::Zero();
        for (std::size_t i = 0; i < stride; ++i) sum += accumulated[first + i];
        for (std::size_t i = 0; i < stride; ++i) accumulated[first + i] = sum;
    }
    for (int j = 0; j <= res.phi; ++j) {
        const std::size_t left = j * stride, right = left + res.theta;
        if (!same(left, right) || accumulated[left] == accumulated[right]) continue;
        const Vec3 sum = accumulated[left] + accumulated[right];
        accumulated[left] = accumulated[right] = sum;
    }
}

void check_inputs(const SuperformulaParams& r1, const SuperformulaParams& r2, TessellationGrid res) {
    r1.validate();
    r2.validate();
    check_resolution(res);
}

[[noreturn]] void throw_non_finite() {
    throw Error(ErrorKind::non_finite_surface, "surface coordinates overflow double range");
}

}  // namespace

bool SuperformulaParams::valid() const noexcept {
    const bool all_finite = std::isfinite(m) && std::isfinite(a) && std::isfinite(b) &&
                            std::isfinite(n1) && std::isfinite(n2) && std::isfinite(n3);
    return all_finite && a > 0.0 && b > 0.0 && n1 > 0.0 && n2 >= 0.0 && n3 >= 0.0;
}

void SuperformulaParams::validate() const {
    if (!valid()) {
        throw Error(ErrorKind::invalid_params,
                    "superformula needs finite values with a, b, n1 > 0 and n2, n3 >= 0 (m=" +
                        std::to_string(m) + " a=" + std::to_string(a) + " b=" + std::to_string(b) +
                        " n1=" + std::to_string(n1) + " n2=" + std::to_string(n2) +
                        " n3=" + std::to_string(n3) + ")");
    }
}

double radius2d(const SuperformulaParams& p, double angle) {
    p.validate();
    if (!std::isfinite(angle)) throw Error(ErrorKind::invalid_params, "angle is not finite");
    const double t = p.m * angle / 4.0;
    const double bracket = std::pow(std::abs(std::cos(t) / p.a), p.n2) +
                           std::pow(std::abs(std::sin(t) / p.b), p.n3);
    const double r = std::pow(bracket, -1.0 / p.n1);
    if (!std::isfinite(r) || r <= 0.0) {
        throw Error(ErrorKind::invalid_params, "radius is not a finite positive number");
    }
    return r;
}

Vec3 surface_point(const SuperformulaParams& r1, const SuperformulaParams& r2, double theta,
                   double phi) {
    const double s1 = radius2d(r1, theta);
    const double s2 = radius2d(r2, phi);
    return {s1 * std::cos(theta) * s2 * std::cos(phi),
            s1 * std::sin(theta) * s2 * std::cos(phi),
            s2 * std::sin(phi)};
}

double grid_theta(int i, int resolution) { return -pi + 2.0 * pi * i / resolution; }
double grid_phi(int j, int resolution) { return -pi / 2.0 + pi * j / resolution; }

bool TriangleMesh::valid(double normal_tolerance) const {
    if (normals.size() != vertices.size()) return false;
    for (const auto& v : vertices)
        if (!finite(v)) return false;
    for (const auto& n : normals)
        if (!finite(n) || std::abs(n.norm() - 1.0) > normal_tolerance) return false;
    for (const auto& t : triangles)
        for (auto idx : t)
            if (idx >= vertices.size()) return false;
    return true;
}

TriangleMesh tessellate_serial(const SuperformulaParams& r1, const SuperformulaParams& r2,
                               TessellationGrid res) {
    check_inputs(r1, r2, res);
    TriangleMesh mesh;
    const std::size_t stride = static_cast<std::size_t>(res.theta) + 1;
    mesh.vertices.resize(stride * (res.phi + 1));
    for (int j = 0; j <= res.phi; ++j)
        for (int i = 0; i <= res.theta; ++i) {
            const Vec3 p = surface_point(r1, r2, grid_theta(i, res.theta), grid_phi(j, res.phi));
            if (!finite(p)) throw_non_finite();
            mesh.vertices[j * stride + i] = p;
        }

    mesh.triangles.resize(row_offset(res.phi - 1, res) + row_triangles(res.phi - 1, res));
    for (int j = 0; j < res.phi; ++j) emit_row(j, res, mesh.triangles.data() + row_offset(j, res));

    const double scale = normal_scale(mesh.vertices);
    std::vector<Vec3> accumulated(mesh.vertices.size(), Vec3::Zero());
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const Vec3 n = face_normal(mesh, t, scale);
        for (auto idx : mesh.triangles[t]) accumulated[idx] += n;
    }
    weld_duplicates(accumulated, mesh.vertices, res);
    mesh.normals.resize(mesh.vertices.size());
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
        mesh.normals[v] = finish_normal(accumulated[v], mesh.vertices[v]);
    return mesh;
}

TriangleMesh tessellate(const SuperformulaParams& r1, const SuperformulaParams& r2,
                        TessellationGrid res) {
    check_inputs(r1, r2, res);
    TriangleMesh mesh;
    const std::size_t stride = static_cast<std::size_t>(res.theta) + 1;
    const long vertex_count = static_cast<long>(stride * (res.phi + 1));
    mesh.vertices.resize(vertex_count);

    bool overflow = false;
#pragma omp parallel for schedule(static) reduction(|| : overflow)
    for (long v = 0; v < vertex_count; ++v) {
        const int i = static_cast<int>(v % static_cast<long>(stride));
        const int j = static_cast<int>(v / static_cast<long>(stride));
        const Vec3 p = surface_point(r1, r2, grid_theta(i, res.theta), grid_phi(j, res.phi));
        overflow = overflow || !finite(p);
        mesh.vertices[v] = p;
    }
    if (overflow) throw_non_finite();

    const long triangle_count =
        static_cast<long>(row_offset(res.phi - 1, res) + row_triangles(res.phi - 1, res));
    mesh.triangles.resize(triangle_count);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < res.phi; ++j) emit_row(j, res, mesh.triangles.data() + row_offset(j, res));

    const double scale = normal_scale(mesh.vertices);
    std::vector<Vec3> faces(triangle_count);
#pragma omp parallel for schedule(static)
    for (long t = 0; t < triangle_count; ++t) faces[t] = face_normal(mesh, t, scale);

    // Incident triangles per vertex in ascending triangle order, so each
    // vertex sums its faces in the same order as the serial scatter loop.
    std::vector<std::size_t> start(vertex_count + 1, 0);
    for (const auto& tri : mesh.triangles)
        for (auto idx : tri) ++start[idx + 1];
    for (long v = 0; v < vertex_count; ++v) start[v + 1] += start[v];
    std::vector<std::size_t> incident(start.back());
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
        for (auto idx : mesh.triangles[t]) incident[fill[idx]++] = t;

    std::vector<Vec3> accumulated(vertex_count);
#pragma omp parallel for schedule(static)
    for (long v = 0; v < vertex_count; ++v) {
        Vec3 sum = Vec3::Zero();
        for (std::size_t k = start[v]; k < start[v + 1]; ++k) sum += faces[incident[k]];
        accumulated[v] = sum;
    }
    weld_duplicates(accumulated, mesh.vertices, res);
    mesh.normals.resize(vertex_count);
#pragma omp parallel for schedule(static)
    for (long v = 0; v < vertex_count; ++v) mesh.normals[v] = finish_normal(accumulated[v], mesh.vertices[v]);
    return mesh;
}

}  // namespace supershape
