#include "su2phase/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "su2phase/wigner.hpp"

namespace su2phase {

CoefficientLadder::CoefficientLadder(int order, std::vector<double> values)
    : order_(order), values_(std::move(values)) {
    if (order_ < 0 || values_.size() != static_cast<std::size_t>(order_ + 1)) {
        throw std::invalid_argument("CoefficientLadder: expected order+1 values");
    }
}

double CoefficientLadder::operator[](int m) const {
    if (std::abs(m) > order_ || (order_ - m) % 2 != 0) {
        throw std::out_of_range("C^" + std::to_string(order_) + "_" + std::to_string(m) +
                                " is not on the ladder");
    }
    return values_[(order_ - m) / 2];
}

CoefficientLadder c_ladder(int order) {
    if (order < 1 || order > kMaxLadderOrder) {
        throw std::invalid_argument("c_ladder: order must be in [1, " +
                                    std::to_string(kMaxLadderOrder) + "], got " +
                                    std::to_string(order));
    }
    // Nonnegative half only, indexed by m directly; negatives follow by symmetry.
    std::vector<double> prev(2, 0.0);
    prev[1] = 1.0;
    for (int j = 2; j <= order; ++j) {
        std::vector<double> next(j + 1, 0.0);
        const auto at = [&](int m) -> double {
            const int am = std::abs(m);
            return am <= j - 1 ? prev[am] : 0.0;
        };
        for (int m = j; m >= 1; m -= 2) {
            next[m] = std::sqrt(0.5 * (j + m)) * at(m - 1) + std::sqrt(0.5 * (j - m)) * at(m + 1);
        }
        if (j % 2 == 0) next[0] = std::sqrt(2.0 * j) * prev[1];
        prev = std::move(next);
    }

    std::vector<double> values(order + 1);
    for (int i = 0; i <= order; ++i) values[i] = prev[std::abs(order - 2 * i)];
    return CoefficientLadder(order, std::move(values));
}

double verify_c_wigner_identity(int twice_j) {
    const CoefficientLadder ladder = c_ladder(twice_j);
    const WignerDMatrix d = wigner_d(HalfInt::from_twice(twice_j), std::numbers::pi / 2);
    const double log_norm = -0.5 * std::lgamma(twice_j + 1.0) - 0.5 * twice_j * std::log(2.0);
    const double norm = std::exp(log_norm);
    double worst = 0.0;
    for (int i = 0; i <= twice_j; ++i) {
        worst = std::max(worst, std::fabs(norm * ladder.values()[i] - d.at_index(i, 0)));
    }
    return worst;
}

}  // namespace su2phase
