#pragma once

#include <Eigen/Dense>

namespace supershape {

using Mat3 = Eigen::Matrix3d;

// Viewing angles in radians, each wrapped to (-pi, pi] on construction.
class ViewAngles {
public:
    ViewAngles() = default;
    ViewAngles(double elevation, double azimuth, double rotation);

    double elevation() const noexcept { return elevation_; }
    double azimuth() const noexcept { return azimuth_; }
    double rotation() const noexcept { return rotation_; }

    friend bool operator==(const ViewAngles&, const ViewAngles&) = default;

private:
    double elevation_ = 0.0;
    double azimuth_ = 0.0;
    double rotation_ = 0.0;
};

// Wraps to (-pi, pi]; throws Error{invalid_params} for non-finite input.
double wrap_angle(double radians);

// World-to-camera rotation R = Roll(rotation) * Pitch(-elevation) * Yaw(-azimuth).
// Camera space is x right, y up, looking down -z. World y is up, so in
// right-handed terms R = Rz(rotation) * Rx(-elevation) * Ry(azimuth)
// (Yaw(psi) turns the world by -psi about +y). Azimuth pi/2 sends world +x to -z.
Mat3 camera_transform(const ViewAngles& view);

}  // namespace supershape
