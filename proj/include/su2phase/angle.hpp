#pragma once

#include "su2phase/states.hpp"

namespace su2phase {

/// psi(phi) = sum_m psi_{j,m} exp(+i m phi). Photonic ladders use the
/// physical projection 2m, i.e. psi_phot(phi) = psi_spin(2 phi).
complex angle_wavefunction(const AngularSector& sector, double phi);

/// d psi / d phi, same conventions as angle_wavefunction.
complex angle_wavefunction_derivative(const AngularSector& sector, double phi);

/// |psi(phi)|^2 / 2pi.
double angle_distribution(const AngularSector& sector, double phi);

/// Trapezoid node count that integrates |psi|^2 exactly: max(4j + 2, 64).
int angle_quadrature_points(const AngularSector& sector);

struct DistributionMoments {
    double normalization;
    double argmax_phi;
};

/// Normalization over [-pi, pi) and the most likely angle. Ties between
/// equal maxima go to the smaller |phi|.
DistributionMoments distribution_moments(const AngularSector& sector);

}  // namespace su2phase
