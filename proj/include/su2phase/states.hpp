#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "su2phase/half_int.hpp"

namespace su2phase {

using complex = std::complex<double>;

/// How a ladder's projections enter the angle exponent. Photonic ladders
/// carry the physical labels j_p = 2j, m_p = 2m.
enum class Flavor { spin, photonic };

/// Fixed-j state: amplitudes psi_{j,m} ordered m = j, j-1, ..., -j.
class AngularSector {
public:
    AngularSector(HalfInt j, std::vector<complex> amps, Flavor flavor = Flavor::spin);

    HalfInt j() const { return j_; }
    Flavor flavor() const { return flavor_; }
    const std::vector<complex>& amps() const { return amps_; }

    complex amp(HalfInt m) const { return amps_[ladder_index(j_, m)]; }

    /// Sum over m of |psi_m|^2.
    double weight() const;

    AngularSector with_flavor(Flavor flavor) const { return AngularSector(j_, amps_, flavor); }

private:
    HalfInt j_;
    std::vector<complex> amps_;
    Flavor flavor_;
};

/// Superposition over two-mode Fock kets |n_u, n_d>.
class TwoModeState {
public:
    using Key = std::pair<int, int>;

    TwoModeState() = default;
    explicit TwoModeState(std::map<Key, complex> amps);

    /// |n, 0>: every photon in the upper input port.
    static TwoModeState single_port(int photons);

    const std::map<Key, complex>& amps() const { return amps_; }
    double norm_squared() const;

    /// Throws unless sum |amp|^2 = 1 within tol.
    void require_normalized(double tol = 1e-12) const;

private:
    std::map<Key, complex> amps_;
};

/// One Schwinger sector of a two-mode state. The ladder keeps its share of
/// the total norm, so `weight` equals `sector.weight()`.
struct WeightedSector {
    AngularSector sector;
    double weight;
};

/// Photonic ladder of an x-polarized N-photon number state (1 <= N <= 64).
AngularSector x_polarized_number_state(int photons);

/// Spin ladder of |j, m_x = j>: the first column of d^{(j)}(pi/2).
AngularSector spin_up_x_state(HalfInt j);

/// Groups Fock amplitudes by j = (n_u + n_d)/2 with m = (n_u - n_d)/2.
/// Sectors are returned in ascending j and are not renormalized.
std::vector<WeightedSector> two_mode_to_sectors(const TwoModeState& state);

}  // namespace su2phase
