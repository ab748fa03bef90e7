#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace supershape {

using Vec3 = Eigen::Vector3d;

// One superformula instance:
//   r(angle) = (|cos(m*angle/4)/a|^n2 + |sin(m*angle/4)/b|^n3)^(-1/n1)
struct SuperformulaParams {
    double m = 0.0;
    double a = 1.0;
    double b = 1.0;
    double n1 = 1.0;
    double n2 = 1.0;
    double n3 = 1.0;

    // a, b, n1 > 0; n2, n3 >= 0; everything finite.
    bool valid() const noexcept;
    void validate() const;  // throws Error{invalid_params}

    // a=b=1, n1=n2=n3=2: r == 1 at every angle, so the surface is the unit sphere.
    static SuperformulaParams sphere() { return {0.0, 1.0, 1.0, 2.0, 2.0, 2.0}; }

    friend bool operator==(const SuperformulaParams&, const SuperformulaParams&) = default;
};

// Throws Error{invalid_params} on invalid params or a non-finite angle.
double radius2d(const SuperformulaParams& params, double angle);

// Spherical product of two superformulas; r1 is evaluated at theta (longitude,
// [-pi, pi]) and r2 at phi (latitude, [-pi/2, pi/2]).
Vec3 surface_point(const SuperformulaParams& r1, const SuperformulaParams& r2, double theta,
                   double phi);

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<Vec3> normals;
    std::vector<std::array<std::size_t, 3>> triangles;

    // Index bounds, unit normals, finite vertices. Returns false on the first violation.
    bool valid(double normal_tolerance = 1e-6) const;
};

struct TessellationGrid {
    int theta = 64;
    int phi = 64;
};

inline constexpr int kMinResolution = 3;

// Grid vertex (i, j) sits at index j * (res.theta + 1) + i and samples
// theta_i = -pi + 2*pi*i/res.theta, phi_j = -pi/2 + pi*j/res.phi (inclusive).
// Each grid quad becomes two triangles except the rows touching the poles,
// which keep a single triangle. Normals are area-weighted face averages
// (coincident seam and pole copies share the sum of their faces);
// a vertex with no accumulated normal gets its radial direction.
//
// Throws Error{invalid_params}, Error{invalid_resolution}, or
// Error{non_finite_surface} when a vertex overflows double range.
TriangleMesh tessellate(const SuperformulaParams& r1, const SuperformulaParams& r2,
                        TessellationGrid res = {});

// Single-threaded reference for tessellate(); results are bit-identical.
TriangleMesh tessellate_serial(const SuperformulaParams& r1, const SuperformulaParams& r2,
                               TessellationGrid res = {});

double grid_theta(int i, int resolution);
double grid_phi(int j, int resolution);

}  // namespace supershape
