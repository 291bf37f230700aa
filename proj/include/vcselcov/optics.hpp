#pragma once
#include "vcselcov/geometry.hpp"

namespace vcselcov {

struct SceneConfig;

/// Receiver front end: detector area, field of view and concentrator gain.
struct FrontEnd {
    double a_d;     // m^2
    double fov;     // rad, half angle
    double g_conc;  // dimensionless

    static FrontEnd from_scene(const SceneConfig& cfg);
};

/// Angle between the beam axis and the ray toward a grid point, in [0, pi].
/// beam_dir must be unit; the arccos argument is clamped so collinear vectors
/// cannot round outside [-1, 1].
double angular_deviation(const Vec3& beam_dir, const Vec3& grid_vec);

/// Far-field Gaussian irradiance, W/m^2:
///   I = 2 p_t / (pi (theta_div d)^2) * exp(-2 (theta_diff / theta_div)^2)
/// theta_div is the Gaussian half-angle; the beam radius is w(d) = theta_div*d.
double irradiance(double p_t, double theta_div, double d, double theta_diff);

/// Ideal non-imaging concentrator gain n^2 / sin^2(fov).
double concentrator_gain(double n_conc, double fov);

/// Collected power: irr * a_d * cos(incidence) * g_conc inside the field of
/// view, exactly zero beyond it. The boundary incidence == fov still collects.
double received_power(double irr, const FrontEnd& front, double incidence);

}  // namespace vcselcov
