#include "su2phase/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "su2phase/ladder.hpp"
#include "su2phase/wigner.hpp"

namespace su2phase {

AngularSector::AngularSector(HalfInt j, std::vector<complex> amps, Flavor flavor)
    : j_(j), amps_(std::move(amps)), flavor_(flavor) {
    if (j_.twice() < 0) throw std::invalid_argument("AngularSector: 2j must be nonnegative");
    if (static_cast<int>(amps_.size()) != ladder_size(j_)) {
        throw std::invalid_argument("AngularSector: expected 2j+1 amplitudes for j=" + j_.str());
    }
}

double AngularSector::weight() const {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return total;
}

TwoModeState::TwoModeState(std::map<Key, complex> amps) : amps_(std::move(amps)) {
    for (const auto& [key, amp] : amps_) {
        if (key.first < 0 || key.second < 0) {
            throw std::invalid_argument("TwoModeState: photon numbers must be nonnegative");
        }
    }
}

TwoModeState TwoModeState::single_port(int photons) {
    if (photons < 0) throw std::invalid_argument("single_port: photon number must be nonnegative");
    return TwoModeState(std::map<Key, complex>{{{photons, 0}, complex(1.0, 0.0)}});
}

double TwoModeState::norm_squared() const {
    double total = 0.0;
    for (const auto& [key, amp] : amps_) total += std::norm(amp);
    return total;
}

void TwoModeState::require_normalized(double tol) const {
    const double n2 = norm_squared();
    if (std::fabs(n2 - 1.0) > tol) {
        throw std::invalid_argument("TwoModeState: norm^2 = " + std::to_string(n2) + ", expected 1");
    }
}

AngularSector x_polarized_number_state(int photons) {
    if (photons < 1 || photons > kMaxLadderOrder) {
        throw std::invalid_argument("x_polarized_number_state: N must be in [1, " +
                                    std::to_string(kMaxLadderOrder) + "], got " +
                                    std::to_string(photons));
    }
    const CoefficientLadder ladder = c_ladder(photons);
    const double norm =
        std::exp(-0.5 * std::lgamma(photons + 1.0) - 0.5 * photons * std::log(2.0));
    std::vector<complex> amps;
    amps.reserve(photons + 1);
    for (double c : ladder.values()) amps.emplace_back(norm * c, 0.0);
    return AngularSector(HalfInt::from_twice(photons), std::move(amps), Flavor::photonic);
}

AngularSector spin_up_x_state(HalfInt j) {
    if (j.twice() < 1) throw std::invalid_argument("spin_up_x_state: requires 2j >= 1");
    const WignerDMatrix d = wigner_d(j, std::numbers::pi / 2);
    std::vector<complex> amps;
    amps.reserve(d.size());
    for (int i = 0; i < d.size(); ++i) amps.emplace_back(d.at_index(i, 0), 0.0);
    return AngularSector(j, std::move(amps), Flavor::spin);
}

std::vector<WeightedSector> two_mode_to_sectors(const TwoModeState& state) {
    std::map<int, std::vector<complex>> ladders;
    for (const auto& [key, amp] : state.amps()) {
        const auto [up, down] = key;
        const int twice_j = up + down;
        auto& ladder = ladders[twice_j];
        if (ladder.empty()) ladder.assign(twice_j + 1, complex(0.0, 0.0));
        // index = j - m = n_d
        ladder[down] += amp;
    }
    std::vector<WeightedSector> out;
    out.reserve(ladders.size());
    for (auto& [twice_j, ladder] : ladders) {
        AngularSector sector(HalfInt::from_twice(twice_j), std::move(ladder), Flavor::spin);
        const double w = sector.weight();
        out.push_back({std::move(sector), w});
    }
    return out;
}

}  // namespace su2phase
