#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "su2phase/states.hpp"
#include "su2phase/wigner.hpp"

namespace su2phase {

// Conventions: the input beam splitter is a +pi/2 rotation about y, the
// output one -pi/2, and the imposed phase acts as exp(-i J_z Phi). Ladders
// passed to the amplitude functions are internal (between the splitters,
// J_z basis). Outcomes m are half the up/down photocount difference.

/// S^{(j)}_m(phi) = sum_{m'} d^{(j)}_{m,m'}(-pi/2) exp(+i m' phi).
complex s_function_eval(HalfInt j, HalfInt m, double phi);

/// <S_m, S_n> = (1/2pi) integral conj(S_m) S_n dphi over [-pi, pi), by trapezoid.
complex s_function_overlap(HalfInt j, HalfInt m, HalfInt n);

/// Maps a port-basis ladder (input Fock amplitudes) through the input
/// splitter: psi_m = sum_{m_x} d_{m,m_x}(pi/2) psi^x_{m_x}.
AngularSector input_splitter(const AngularSector& port_ladder);

/// Psi_m(Phi) = sum_{m'} d_{m,m'}(-pi/2) exp(-i m' Phi) psi_{m'}.
complex interferometer_amplitude_direct(const AngularSector& sector, HalfInt m, double phi);

/// Same amplitude as the phase-space convolution
/// (1/2pi) integral S_m(-phi) psi(phi - Phi) dphi, on 4(2j)+2 trapezoid nodes.
complex interferometer_amplitude_convolution(const AngularSector& sector, HalfInt m, double phi);

/// d Psi_m / d Phi.
complex interferometer_amplitude_derivative(const AngularSector& sector, HalfInt m, double phi);

int convolution_quadrature_points(HalfInt j);

struct SectorProbabilities {
    HalfInt j;
    double weight;
    /// P^{(j)}_m(Phi) for m = j..-j, already scaled by the sector weight.
    std::vector<double> probs;
};

struct InterferometerDistribution {
    double phi;
    /// Outcome m -> probability, summed over sectors sharing m.
    std::map<HalfInt, double, std::greater<>> probs;
    std::vector<SectorProbabilities> per_sector;

    double total() const;
};

/// Contributions with P < 1e-14 and |dP| < 1e-10 count as zero; any other
/// P < 1e-14 outcome is skipped and counted as indeterminate.
struct FisherInfo {
    double value = 0.0;
    int indeterminate = 0;
};

/// Outcome law of a two-mode input, precomputed for repeated evaluation.
class InterferometerLaw {
public:
    explicit InterferometerLaw(const TwoModeState& state);

    /// Distinct outcomes, descending m.
    const std::vector<HalfInt>& outcomes() const { return outcomes_; }
    const std::vector<WeightedSector>& internal_sectors() const { return sectors_; }

    /// P_m(Phi) aligned with outcomes().
    std::vector<double> probabilities(double phi) const;
    std::vector<double> slopes(double phi) const;

    InterferometerDistribution distribution(double phi) const;
    FisherInfo fisher(double phi) const;

private:
    std::size_t outcome_position(HalfInt m) const;

    std::vector<WeightedSector> sectors_;
    std::vector<HalfInt> outcomes_;
};

InterferometerDistribution interferometer_probs(const TwoModeState& state, double phi);

/// binom(2j, j+m) cos^{2(j+m)}(Phi/2) sin^{2(j-m)}(Phi/2), the law of a
/// single-port number state.
double single_port_closed_form(HalfInt j, HalfInt m, double phi);

/// Fisher information of the outcome law of one internal ladder.
FisherInfo fisher_information(const AngularSector& sector, double phi);

}  // namespace su2phase
