#include "unicrit/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "unicrit/preimage.hpp"

namespace unicrit {

namespace {

constexpr double kRadiusInflation = 1.0 + 1e-12;

// Smallest disk covering the sector-annulus corners (rho, +-alpha) in axis
// coordinates: either the diametral disk of the two outer corners or the
// on-axis circle equidistant from outer and inner corners.
void covering_disk(double rho_min, double rho_max, double alpha,
                   double& center_x, double& radius) {
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    const double x_diam = rho_max * ca;
    const double r_diam = rho_max * sa;
    const double dx = x_diam - rho_min * ca;
    const double dy = rho_min * sa;
    if (dx * dx + dy * dy <= r_diam * r_diam) {
        center_x = x_diam;
        radius = r_diam;
        return;
    }
    const double x = (rho_min + rho_max) / (2.0 * ca);
    const double r2 = x * x + rho_max * rho_max - 2.0 * x * rho_max * ca;
    center_x = x;
    radius = std::sqrt(std::max(r2, 0.0));
}

}  // namespace

DiskEnclosure critical_scale_disk(const UnicriticalMap& map, double delta) {
    if (!(delta >= 0.0)) throw UsageError("scale delta must be >= 0");
    return DiskEnclosure{Complex{0.0, 0.0}, real_root(delta, map.degree)};
}

std::vector<PullbackStep> disk_preimage_components(const UnicriticalMap& map,
                                                   const DiskEnclosure& D) {
    if (!(D.radius >= 0.0) || !std::isfinite(D.radius))
        throw UsageError("disk radius must be finite and >= 0");
    const Complex a = D.center - map.c;
    const double mod_a = std::abs(a);
    const double r = D.radius;
    std::vector<PullbackStep> steps;

    if (mod_a <= r) {
        // The disk contains the critical value; the preimage is one component
        // around 0 and every d-th root of points of D lies inside the bound.
        PullbackStep step;
        step.image = D;
        step.critical = true;
        const double bound = real_root(mod_a + r, map.degree);
        step.outer = DiskEnclosure{Complex{0.0, 0.0},
                                   bound * kRadiusInflation + bound * 1e-15};
        step.inner_point = mod_a > 0.0 ? branch_root(map.degree, a, 0)
                                       : Complex{0.0, 0.0};
        steps.push_back(step);
        return steps;
    }

    const double rho_min = real_root(mod_a - r, map.degree);
    const double rho_max = real_root(mod_a + r, map.degree);
    const double alpha = std::asin(std::min(r / mod_a, 1.0)) / map.degree;
    double center_x = 0.0;
    double radius = 0.0;
    covering_disk(rho_min, rho_max, alpha, center_x, radius);
    const double base_arg = principal_arg(a);
    steps.reserve(static_cast<std::size_t>(map.degree));
    for (int k = 0; k < map.degree; ++k) {
        const double theta =
            (base_arg + 2.0 * std::numbers::pi * k) / map.degree;
        PullbackStep step;
        step.image = D;
        step.branch = k;
        step.sector_half_angle = alpha;
        step.sector_axis = theta;
        // The absolute term covers position rounding when the radius itself
        // is near zero.
        step.outer = DiskEnclosure{std::polar(center_x, theta),
                                   radius * kRadiusInflation + rho_max * 1e-15};
        step.inner_point = branch_root(map.degree, a, k);
        steps.push_back(step);
    }
    return steps;
}

double modulus_round(double outer_radius, double inner_radius) {
    if (!(inner_radius > 0.0) || !(inner_radius <= outer_radius))
        throw UsageError("round modulus requires 0 < inner <= outer");
    return std::log(outer_radius / inner_radius);
}

}  // namespace unicrit
