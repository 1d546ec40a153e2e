#include "su2phase/angle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "su2phase/numeric.hpp"

namespace su2phase {
namespace {

double exponent_scale(const AngularSector& sector) {
    return sector.flavor() == Flavor::photonic ? 2.0 : 1.0;
}

void check_angle(double phi) {
    if (!std::isfinite(phi)) throw std::invalid_argument("angle must be finite");
}

double distribution_slope(const AngularSector& sector, double phi) {
    const complex psi = angle_wavefunction(sector, phi);
    const complex dpsi = angle_wavefunction_derivative(sector, phi);
    return 2.0 * std::real(std::conj(psi) * dpsi) / (2.0 * std::numbers::pi);
}

}  // namespace

complex angle_wavefunction(const AngularSector& sector, double phi) {
    check_angle(phi);
    const double theta = exponent_scale(sector) * phi;
    const int twice_j = sector.j().twice();
    complex acc(0.0, 0.0);
    for (int i = 0; i <= twice_j; ++i) {
        const double m = 0.5 * (twice_j - 2 * i);
        acc += sector.amps()[i] * std::polar(1.0, m * theta);
    }
    return acc;
}

complex angle_wavefunction_derivative(const AngularSector& sector, double phi) {
    check_angle(phi);
    const double scale = exponent_scale(sector);
    const double theta = scale * phi;
    const int twice_j = sector.j().twice();
    complex acc(0.0, 0.0);
    for (int i = 0; i <= twice_j; ++i) {
        const double m = 0.5 * (twice_j - 2 * i);
        acc += sector.amps()[i] * complex(0.0, scale * m) * std::polar(1.0, m * theta);
    }
    return acc;
}

double angle_distribution(const AngularSector& sector, double phi) {
    return std::norm(angle_wavefunction(sector, phi)) / (2.0 * std::numbers::pi);
}

int angle_quadrature_points(const AngularSector& sector) {
    return std::max(2 * sector.j().twice() + 2, 64);
}

DistributionMoments distribution_moments(const AngularSector& sector) {
    const int points = angle_quadrature_points(sector);
    std::vector<double> values(points);
    for (int k = 0; k < points; ++k) values[k] = angle_distribution(sector, periodic_node(k, points));

    double mean = 0.0;
    for (double v : values) mean += v;
    // Mean over the grid times the 2pi period.
    const double normalization = 2.0 * std::numbers::pi * mean / points;

    int best = 0;
    for (int k = 1; k < points; ++k) {
        const double tol = 1e-13 * std::max(values[best], 1e-300);
        if (values[k] > values[best] + tol) {
            best = k;
        } else if (std::fabs(values[k] - values[best]) <= tol &&
                   std::fabs(periodic_node(k, points)) < std::fabs(periodic_node(best, points))) {
            best = k;
        }
    }

    const double step = 2.0 * std::numbers::pi / points;
    const double center = periodic_node(best, points);
    double lo = center - step;
    double hi = center + step;
    double refined = center;
    if (distribution_slope(sector, lo) > 0.0 && distribution_slope(sector, hi) < 0.0) {
        // Bisect on the sign of the analytic slope; the value itself is too
        // flat near the peak to resolve 1e-10 in phi.
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            (distribution_slope(sector, mid) > 0.0 ? lo : hi) = mid;
        }
        refined = 0.5 * (lo + hi);
    } else {
        refined = golden_section_minimize([&](double x) { return -angle_distribution(sector, x); },
                                          lo, hi, 1e-10)
                      .first;
    }
    if (angle_distribution(sector, refined) < values[best] * (1.0 - 1e-13)) refined = center;
    // Report on the canonical interval.
    if (refined >= std::numbers::pi) refined -= 2.0 * std::numbers::pi;
    if (refined < -std::numbers::pi) refined += 2.0 * std::numbers::pi;
    return {normalization, refined};
}

}  // namespace su2phase
