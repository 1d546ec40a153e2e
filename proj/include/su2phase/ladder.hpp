#pragma once

#include <vector>

namespace su2phase {

/// Largest photon number accepted by the coefficient recursion.
inline constexpr int kMaxLadderOrder = 64;

/// Expansion coefficients C^{j}_{m} of an x-polarized j-photon number state
/// over circular-polarization kets |j, m>, with m = j, j-2, ..., -j.
class CoefficientLadder {
public:
    CoefficientLadder(int order, std::vector<double> values);

    int order() const { return order_; }

    /// C^{j}_{m}; m must share the parity of j and satisfy |m| <= j.
    double operator[](int m) const;

    /// Values ordered m = j, j-2, ..., -j.
    const std::vector<double>& values() const { return values_; }

private:
    int order_;
    std::vector<double> values_;
};

/// Runs the two-term recursion up to `order` (1..64), seeded by C^1_1 = 1.
CoefficientLadder c_ladder(int order);

/// Max over m of |C^{2j}_{2m} / (sqrt((2j)!) 2^j) - d^{(j)}_{m,j}(pi/2)| with 2j = twice_j.
double verify_c_wigner_identity(int twice_j);

}  // namespace su2phase
