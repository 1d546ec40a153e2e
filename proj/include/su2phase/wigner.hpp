#pragma once

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <shared_mutex>
#include <utility>

#include "su2phase/half_int.hpp"

namespace su2phase {

/// Wigner small-d matrix d^{(j)}_{m,m'}(beta) for a rotation about the y axis.
///
/// Rows and columns are ordered by descending projection (index 0 is m = j),
/// so column 0 is the image of the top state |j, j>. The sign convention is
/// d = exp(-i beta J_y), under which d^{(j)}_{m,j}(+pi/2) >= 0 for all m.
class WignerDMatrix {
public:
    WignerDMatrix(HalfInt j, double beta, Eigen::MatrixXd entries);

    HalfInt j() const { return j_; }
    double beta() const { return beta_; }
    int size() const { return static_cast<int>(entries_.rows()); }

    double operator()(HalfInt m, HalfInt mp) const {
        return entries_(ladder_index(j_, m), ladder_index(j_, mp));
    }
    double at_index(int row, int col) const { return entries_(row, col); }

    const Eigen::MatrixXd& matrix() const { return entries_; }

private:
    HalfInt j_;
    double beta_;
    Eigen::MatrixXd entries_;
};

/// Largest 2j accepted by the Wigner engines.
inline constexpr int kMaxTwiceJ = 512;

/// Small-d matrix built by coupling one spin-1/2 at a time. Each step
/// projects a tensor product of orthogonal matrices, so the result stays
/// orthogonal to rounding for large j.
WignerDMatrix wigner_d(HalfInt j, double beta);

/// Same matrix from the closed-form alternating sum, factorials in log
/// space. Suffers cancellation of order C(2j, j) / 2^{2j} relative to unity;
/// intended as an independent cross-check for small j.
WignerDMatrix wigner_d_explicit(HalfInt j, double beta);

/// Real generator A = -i J_y with exp(beta A) = wigner_d(j, beta).
/// Tridiagonal; A_{m-1,m} = +1/2 sqrt(j(j+1) - m(m-1)) and A_{m+1,m} the negative of its mirror.
Eigen::MatrixXd jy_generator(HalfInt j);

/// Thread-safe memo of wigner_d keyed by (2j, beta). Concurrent inserts of
/// the same key are harmless since the stored values are identical.
class WignerCache {
public:
    std::shared_ptr<const WignerDMatrix> get(HalfInt j, double beta);

    static WignerCache& global();

private:
    std::shared_mutex mutex_;
    std::map<std::pair<int, double>, std::shared_ptr<const WignerDMatrix>> entries_;
};

}  // namespace su2phase
