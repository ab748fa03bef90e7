#pragma once

#include "supershape/camera.hpp"
#include "supershape/geometry.hpp"
#include "supershape/image.hpp"

namespace supershape {

struct RenderConfig {
    int width = 224;
    int height = 224;
    Rgb background{128, 128, 128};
    // Fraction of min(width, height) covered by the bounding sphere's diameter.
    double framing = 0.9;
    Rgb albedo{232, 176, 104};
    double ambient = 0.15;

    void validate() const;  // throws Error{invalid_config}
};

struct RenderResult {
    ImageBuffer image;
    bool degenerate = false;  // zero or non-finite bounding radius; image is pure background
};

// Mesh z (the supershape's polar axis) is mapped to world y (up) before the
// camera rotation: world = (x, z, -y).
Mat3 model_to_world();

// Bounding sphere used for auto-framing: AABB center, radius to the farthest vertex.
struct BoundingSphere {
    Vec3 center = Vec3::Zero();
    double radius = 0.0;
};
BoundingSphere bounding_sphere(const TriangleMesh& mesh);

// Orthographic, auto-framed (bounding sphere centered, diameter = framing *
// min(width, height)), z-buffered, no culling. Shading is Lambertian from a
// headlight along the view axis, two-sided, on interpolated vertex normals:
// color = albedo * (ambient + (1 - ambient) * |n.z|).
// Rows are rasterized in parallel bands; output is byte-identical to render_serial.
RenderResult render(const TriangleMesh& mesh, const ViewAngles& view, const RenderConfig& config = {});

RenderResult render_serial(const TriangleMesh& mesh, const ViewAngles& view,
                           const RenderConfig& config = {});

// Pixels differing from the background color.
std::size_t silhouette_pixels(const ImageBuffer& image, Rgb background);

}  // namespace supershape
