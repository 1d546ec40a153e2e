#include "su2phase/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "su2phase/angle.hpp"
#include "su2phase/numeric.hpp"

namespace su2phase {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kProbFloor = 1e-14;
constexpr double kSlopeFloor = 1e-10;

std::shared_ptr<const WignerDMatrix> output_splitter(HalfInt j) {
    return WignerCache::global().get(j, -kHalfPi);
}

void require_spin(const AngularSector& sector) {
    if (sector.flavor() != Flavor::spin) {
        throw std::invalid_argument("interferometer: ladder must be spin-flavored");
    }
}

double projection(HalfInt j, int index) { return ladder_projection(j, index).value(); }

}  // namespace

complex s_function_eval(HalfInt j, HalfInt m, double phi) {
    const auto d = output_splitter(j);
    const int row = ladder_index(j, m);
    complex acc(0.0, 0.0);
    for (int col = 0; col < d->size(); ++col) {
        acc += d->at_index(row, col) * std::polar(1.0, projection(j, col) * phi);
    }
    return acc;
}

complex s_function_overlap(HalfInt j, HalfInt m, HalfInt n) {
    ladder_index(j, m);
    ladder_index(j, n);
    return periodic_mean<complex>(
        [&](double phi) { return std::conj(s_function_eval(j, m, phi)) * s_function_eval(j, n, phi); },
        convolution_quadrature_points(j));
}

AngularSector input_splitter(const AngularSector& port_ladder) {
    require_spin(port_ladder);
    const HalfInt j = port_ladder.j();
    const auto d = WignerCache::global().get(j, kHalfPi);
    std::vector<complex> internal(ladder_size(j), complex(0.0, 0.0));
    for (int row = 0; row < d->size(); ++row) {
        for (int col = 0; col < d->size(); ++col) {
            internal[row] += d->at_index(row, col) * port_ladder.amps()[col];
        }
    }
    return AngularSector(j, std::move(internal), Flavor::spin);
}

complex interferometer_amplitude_direct(const AngularSector& sector, HalfInt m, double phi) {
    require_spin(sector);
    if (!std::isfinite(phi)) throw std::invalid_argument("Phi must be finite");
    const HalfInt j = sector.j();
    const int row = ladder_index(j, m);
    const auto d = output_splitter(j);
    complex acc(0.0, 0.0);
    for (int col = 0; col < d->size(); ++col) {
        acc += d->at_index(row, col) * std::polar(1.0, -projection(j, col) * phi) * sector.amps()[col];
    }
    return acc;
}

complex interferometer_amplitude_derivative(const AngularSector& sector, HalfInt m, double phi) {
    require_spin(sector);
    const HalfInt j = sector.j();
    const int row = ladder_index(j, m);
    const auto d = output_splitter(j);
    complex acc(0.0, 0.0);
    for (int col = 0; col < d->size(); ++col) {
        const double mp = projection(j, col);
        acc += complex(0.0, -mp) * d->at_index(row, col) * std::polar(1.0, -mp * phi) *
               sector.amps()[col];
    }
    return acc;
}

int convolution_quadrature_points(HalfInt j) { return 4 * j.twice() + 2; }

complex interferometer_amplitude_convolution(const AngularSector& sector, HalfInt m, double phi) {
    require_spin(sector);
    if (!std::isfinite(phi)) throw std::invalid_argument("Phi must be finite");
    const HalfInt j = sector.j();
    ladder_index(j, m);
    return periodic_mean<complex>(
        [&](double x) { return s_function_eval(j, m, -x) * angle_wavefunction(sector, x - phi); },
        convolution_quadrature_points(j));
}

double InterferometerDistribution::total() const {
    double acc = 0.0;
    for (const auto& [m, p] : probs) acc += p;
    return acc;
}

InterferometerLaw::InterferometerLaw(const TwoModeState& state) {
    std::set<HalfInt, std::greater<>> alphabet;
    for (auto& ws : two_mode_to_sectors(state)) {
        if (ws.weight == 0.0) continue;
        for (int i = 0; i < ladder_size(ws.sector.j()); ++i) {
            alphabet.insert(ladder_projection(ws.sector.j(), i));
        }
        sectors_.push_back({input_splitter(ws.sector), ws.weight});
    }
    if (sectors_.empty()) throw std::invalid_argument("InterferometerLaw: state has no amplitude");
    outcomes_.assign(alphabet.begin(), alphabet.end());
}

namespace {

/// Outcome amplitudes (m = j..-j) of one internal ladder and their Phi-derivatives.
void sector_amplitudes(const AngularSector& sector, double phi, std::vector<complex>& amps,
                       std::vector<complex>* slopes) {
    const HalfInt j = sector.j();
    const int n = ladder_size(j);
    const auto d = output_splitter(j);
    std::vector<complex> phased(n);
    for (int col = 0; col < n; ++col) {
        phased[col] = std::polar(1.0, -projection(j, col) * phi) * sector.amps()[col];
    }
    amps.assign(n, complex(0.0, 0.0));
    if (slopes) slopes->assign(n, complex(0.0, 0.0));
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            const complex term = d->at_index(row, col) * phased[col];
            amps[row] += term;
            if (slopes) (*slopes)[row] += complex(0.0, -projection(j, col)) * term;
        }
    }
}

}  // namespace

std::size_t InterferometerLaw::outcome_position(HalfInt m) const {
    const auto pos = std::lower_bound(outcomes_.begin(), outcomes_.end(), m, std::greater<>());
    return static_cast<std::size_t>(pos - outcomes_.begin());
}

std::vector<double> InterferometerLaw::probabilities(double phi) const {
    std::vector<double> out(outcomes_.size(), 0.0);
    std::vector<complex> amps;
    for (const auto& ws : sectors_) {
        sector_amplitudes(ws.sector, phi, amps, nullptr);
        for (int i = 0; i < static_cast<int>(amps.size()); ++i) {
            out[outcome_position(ladder_projection(ws.sector.j(), i))] += std::norm(amps[i]);
        }
    }
    return out;
}

std::vector<double> InterferometerLaw::slopes(double phi) const {
    std::vector<double> out(outcomes_.size(), 0.0);
    std::vector<complex> amps;
    std::vector<complex> damps;
    for (const auto& ws : sectors_) {
        sector_amplitudes(ws.sector, phi, amps, &damps);
        for (int i = 0; i < static_cast<int>(amps.size()); ++i) {
            out[outcome_position(ladder_projection(ws.sector.j(), i))] +=
                2.0 * std::real(std::conj(amps[i]) * damps[i]);
        }
    }
    return out;
}

InterferometerDistribution InterferometerLaw::distribution(double phi) const {
    InterferometerDistribution dist{phi, {}, {}};
    std::vector<complex> amps;
    for (const auto& ws : sectors_) {
        const HalfInt j = ws.sector.j();
        sector_amplitudes(ws.sector, phi, amps, nullptr);
        SectorProbabilities sp{j, ws.weight, {}};
        for (int i = 0; i < ladder_size(j); ++i) {
            const double p = std::norm(amps[i]);
            sp.probs.push_back(p);
            dist.probs[ladder_projection(j, i)] += p;
        }
        dist.per_sector.push_back(std::move(sp));
    }
    return dist;
}

namespace {

FisherInfo accumulate_fisher(const std::vector<double>& probs, const std::vector<double>& slopes) {
    FisherInfo info;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] < kProbFloor) {
            if (std::fabs(slopes[k]) >= kSlopeFloor) ++info.indeterminate;
            continue;
        }
        info.value += slopes[k] * slopes[k] / probs[k];
    }
    return info;
}

}  // namespace

FisherInfo InterferometerLaw::fisher(double phi) const {
    return accumulate_fisher(probabilities(phi), slopes(phi));
}

InterferometerDistribution interferometer_probs(const TwoModeState& state, double phi) {
    state.require_normalized();
    return InterferometerLaw(state).distribution(phi);
}

double single_port_closed_form(HalfInt j, HalfInt m, double phi) {
    ladder_index(j, m);
    const int up = (j.twice() + m.twice()) / 2;    // j + m
    const int down = (j.twice() - m.twice()) / 2;  // j - m
    const double log_binom =
        std::lgamma(j.twice() + 1.0) - std::lgamma(up + 1.0) - std::lgamma(down + 1.0);
    const double c = std::cos(0.5 * phi);
    const double s = std::sin(0.5 * phi);
    return std::exp(log_binom) * std::pow(c * c, up) * std::pow(s * s, down);
}

FisherInfo fisher_information(const AngularSector& sector, double phi) {
    require_spin(sector);
    const HalfInt j = sector.j();
    std::vector<double> probs;
    std::vector<double> slopes;
    for (int i = 0; i < ladder_size(j); ++i) {
        const HalfInt m = ladder_projection(j, i);
        const complex amp = interferometer_amplitude_direct(sector, m, phi);
        const complex damp = interferometer_amplitude_derivative(sector, m, phi);
        probs.push_back(std::norm(amp));
        slopes.push_back(2.0 * std::real(std::conj(amp) * damp));
    }
    return accumulate_fisher(probs, slopes);
}

}  // namespace su2phase
