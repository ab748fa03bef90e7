#include "supershape/camera.hpp"

#include <cmath>
#include <numbers>

#include "supershape/error.hpp"

namespace supershape {

namespace {

Mat3 rot_x(double t) {
    const double c = std::cos(t), s = std::sin(t);
    Mat3 m;
    m << 1, 0, 0,
         0, c, -s,
         0, s, c;
    return m;
}

Mat3 rot_y(double t) {
    const double c = std::cos(t), s = std::sin(t);
    Mat3 m;
    m << c, 0, s,
         0, 1, 0,
         -s, 0, c;
    return m;
}

Mat3 rot_z(double t) {
    const double c = std::cos(t), s = std::sin(t);
    Mat3 m;
    m << c, -s, 0,
         s, c, 0,
         0, 0, 1;
    return m;
}

}  // namespace

double wrap_angle(double radians) {
    if (!std::isfinite(radians)) throw Error(ErrorKind::invalid_params, "view angle is not finite");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::remainder(radians, two_pi);  // [-pi, pi]
    if (w <= -std::numbers::pi) w += two_pi;
    return w;
}

ViewAngles::ViewAngles(double elevation, double azimuth, double rotation)
    : elevation_(wrap_angle(elevation)), azimuth_(wrap_angle(azimuth)), rotation_(wrap_angle(rotation)) {}

Mat3 camera_transform(const ViewAngles& view) {
    return rot_z(view.rotation()) * rot_x(-view.elevation()) * rot_y(view.azimuth());
}

}  // namespace supershape
