#include "vcselcov/optics.hpp"

#include <algorithm>
#include <cmath>

#include "vcselcov/errors.hpp"
#include "vcselcov/scene.hpp"

namespace vcselcov {

FrontEnd FrontEnd::from_scene(const SceneConfig& cfg) {
    return {cfg.a_d, cfg.fov, concentrator_gain(cfg.n_conc, cfg.fov)};
}

double angular_deviation(const Vec3& beam_dir, const Vec3& grid_vec) {
    const double n = grid_vec.norm();
    if (n <= 0.0) throw GeometryError("grid vector must be nonzero");
    const double cosang = std::clamp(beam_dir.dot(grid_vec) / n, -1.0, 1.0);
    return std::acos(cosang);
}

double irradiance(double p_t, double theta_div, double d, double theta_diff) {
    if (d <= 0.0 || theta_div <= 0.0)
        throw GeometryError("irradiance needs d > 0 and theta_div > 0");
    const double w = theta_div * d;  // far-field beam radius
    const double ratio = theta_diff / theta_div;
    return 2.0 * p_t / (kPi * w * w) * std::exp(-2.0 * ratio * ratio);
}

double concentrator_gain(double n_conc, double fov) {
    if (fov <= 0.0) throw GeometryError("fov must be positive");
    const double s = std::sin(fov);
    return n_conc * n_conc / (s * s);
}

double received_power(double irr, const FrontEnd& front, double incidence) {
    if (incidence > front.fov) return 0.0;  // gate: outside the field of view
    return irr * front.a_d * std::cos(incidence) * front.g_conc;
}

}  // namespace vcselcov
