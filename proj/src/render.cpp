#include "supershape/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "supershape/error.hpp"

namespace supershape {

namespace {

struct ScreenVertex {
    double x, y, depth;
    Vec3 normal;
};

struct Projection {
    std::vector<ScreenVertex> vertices;
    bool degenerate = false;
};

constexpr int kBandRows = 8;

Projection project(const TriangleMesh& mesh, const ViewAngles& view, const RenderConfig& config) {
    Projection out;
    const BoundingSphere sphere = bounding_sphere(mesh);
    if (!(sphere.radius > 0.0) || !std::isfinite(sphere.radius)) {
        out.degenerate = true;
        return out;
    }
    const Mat3 rotation = camera_transform(view) * model_to_world();
    const double half = 0.5 * config.framing * std::min(config.width, config.height);
    const double cx = 0.5 * config.width, cy = 0.5 * config.height;

    const long n = static_cast<long>(mesh.vertices.size());
    out.vertices.resize(n);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        const Vec3 p = rotation * ((mesh.vertices[i] - sphere.center) / sphere.radius);
        out.vertices[i] = {cx + p.x() * half, cy - p.y() * half, p.z(), rotation * mesh.normals[i]};
    }
    return out;
}

struct Target {
    ImageBuffer& image;
    std::vector<double>& depth;
    const RenderConfig& config;
};

inline double edge(double ax, double ay, double bx, double by, double px, double py) {
    return (bx - ax) * (py - ay) - (by - ay) * (px - ax);
}

Rgb shade(const RenderConfig& config, const Vec3& normal) {
    const double len = normal.norm();
    const double facing = len > 0.0 ? std::abs(normal.z()) / len : 0.0;
    const double k = config.ambient + (1.0 - config.ambient) * std::min(facing, 1.0);
    auto channel = [k](std::uint8_t c) {
        return static_cast<std::uint8_t>(std::lround(std::clamp(c * k, 0.0, 255.0)));
    };
    return {channel(config.albedo.r), channel(config.albedo.g), channel(config.albedo.b)};
}

// Rasterizes one triangle restricted to rows [row_begin, row_end).
// A pixel is covered when its center lies inside or on the triangle;
// nearer means larger camera-space z (the camera looks down -z).
void raster_triangle(const ScreenVertex& a, const ScreenVertex& b, const ScreenVertex& c,
                     int row_begin, int row_end, Target& target) {
    const double area = edge(a.x, a.y, b.x, b.y, c.x, c.y);
    if (area == 0.0 || !std::isfinite(area)) return;

    const int width = target.image.width();
    const double min_x = std::min({a.x, b.x, c.x}), max_x = std::max({a.x, b.x, c.x});
    const double min_y = std::min({a.y, b.y, c.y}), max_y = std::max({a.y, b.y, c.y});
    const int x0 = std::max(0, static_cast<int>(std::ceil(min_x - 0.5)));
    const int x1 = std::min(width - 1, static_cast<int>(std::floor(max_x - 0.5)));
    const int y0 = std::max(row_begin, static_cast<int>(std::ceil(min_y - 0.5)));
    const int y1 = std::min(row_end - 1, static_cast<int>(std::floor(max_y - 0.5)));

    const double inv_area = 1.0 / area;
    for (int y = y0; y <= y1; ++y) {
        const double py = y + 0.5;
        for (int x = x0; x <= x1; ++x) {
            const double px = x + 0.5;
            const double w0 = edge(b.x, b.y, c.x, c.y, px, py) * inv_area;
            const double w1 = edge(c.x, c.y, a.x, a.y, px, py) * inv_area;
            const double w2 = edge(a.x, a.y, b.x, b.y, px, py) * inv_area;
            if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0) continue;
            const double z = w0 * a.depth + w1 * b.depth + w2 * c.depth;
            double& stored = target.depth[static_cast<std::size_t>(y) * width + x];
            if (!(z > stored)) continue;
            stored = z;
            target.image.set(x, y, shade(target.config, w0 * a.normal + w1 * b.normal + w2 * c.normal));
        }
    }
}

RenderResult render_impl(const TriangleMesh& mesh, const ViewAngles& view, const RenderConfig& config,
                         bool parallel) {
    config.validate();
    RenderResult result{ImageBuffer(config.width, config.height, config.background), false};
    if (mesh.vertices.empty()) {
        result.degenerate = true;
        return result;
    }
    const Projection proj = project(mesh, view, config);
    if (proj.degenerate) {
        result.degenerate = true;
        return result;
    }

    std::vector<double> depth(result.image.pixel_count(), -std::numeric_limits<double>::infinity());
    Target target{result.image, depth, config};
    const auto& sv = proj.vertices;

    if (!parallel) {
        for (const auto& t : mesh.triangles) raster_triangle(sv[t[0]], sv[t[1]], sv[t[2]], 0, config.height, target);
        return result;
    }

    // Bands own disjoint rows, so every pixel still sees triangles in mesh order.
    const int bands = (config.height + kBandRows - 1) / kBandRows;
#pragma omp parallel for schedule(dynamic)
    for (int band = 0; band < bands; ++band) {
        const int row_begin = band * kBandRows;
        const int row_end = std::min(config.height, row_begin + kBandRows);
        const double lo = row_begin - 0.5, hi = row_end + 0.5;
        for (const auto& t : mesh.triangles) {
            const auto& a = sv[t[0]];
            const auto& b = sv[t[1]];
            const auto& c = sv[t[2]];
            if (std::max({a.y, b.y, c.y}) < lo || std::min({a.y, b.y, c.y}) > hi) continue;
            raster_triangle(a, b, c, row_begin, row_end, target);
        }
    }
    return result;
}

}  // namespace

void RenderConfig::validate() const {
    if (width < 1 || height < 1)
        throw Error(ErrorKind::invalid_config, "render width and height must be positive");
    if (!(framing > 0.0 && framing <= 1.0))
        throw Error(ErrorKind::invalid_config, "framing must lie in (0, 1]");
    if (!(ambient >= 0.0 && ambient <= 1.0))
        throw Error(ErrorKind::invalid_config, "ambient must lie in [0, 1]");
}

Mat3 model_to_world() {
    Mat3 m;
    m << 1, 0, 0,
         0, 0, 1,
         0, -1, 0;
    return m;
}

BoundingSphere bounding_sphere(const TriangleMesh& mesh) {
    BoundingSphere s;
    if (mesh.vertices.empty()) return s;
    Vec3 lo = mesh.vertices.front(), hi = lo;
    for (const auto& v : mesh.vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    s.center = 0.5 * lo + 0.5 * hi;
    for (const auto& v : mesh.vertices) s.radius = std::max(s.radius, (v - s.center).stableNorm());
    return s;
}

RenderResult render(const TriangleMesh& mesh, const ViewAngles& view, const RenderConfig& config) {
    return render_impl(mesh, view, config, true);
}

RenderResult render_serial(const TriangleMesh& mesh, const ViewAngles& view, const RenderConfig& config) {
    return render_impl(mesh, view, config, false);
}

std::size_t silhouette_pixels(const ImageBuffer& image, Rgb background) {
    std::size_t count = 0;
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x)
            if (image.at(x, y) != background) ++count;
    return count;
}

}  // namespace supershape
