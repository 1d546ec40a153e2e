#include "su2phase/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <mutex>
#include <stdexcept>
#include <string>

namespace su2phase {
namespace {

void check_arguments(HalfInt j, double beta) {
    if (j.twice() < 0) throw std::invalid_argument("wigner_d: 2j must be nonnegative");
    if (j.twice() > kMaxTwiceJ) {
        throw std::invalid_argument("wigner_d: 2j=" + std::to_string(j.twice()) +
                                    " exceeds " + std::to_string(kMaxTwiceJ));
    }
    if (!std::isfinite(beta)) throw std::invalid_argument("wigner_d: beta must be finite");
}

}  // namespace

WignerDMatrix::WignerDMatrix(HalfInt j, double beta, Eigen::MatrixXd entries)
    : j_(j), beta_(beta), entries_(std::move(entries)) {
    if (entries_.rows() != ladder_size(j) || entries_.cols() != ladder_size(j)) {
        throw std::invalid_argument("WignerDMatrix: shape does not match 2j+1");
    }
}

WignerDMatrix wigner_d(HalfInt j, double beta) {
    check_arguments(j, beta);
    const double c = std::cos(0.5 * beta);
    const double s = std::sin(0.5 * beta);

    // Index i <-> m = j - i. Level n = 2j is the spin-j projection of
    // d^{(j-1/2)} (x) d^{(1/2)}; |j,m> couples to |j-1/2, m-+1/2>|up/down>
    // with weights sqrt((j+-m)/2j). Projection is a contraction, so rounding
    // errors do not grow with j.
    Eigen::MatrixXd prev = Eigen::MatrixXd::Ones(1, 1);
    for (int n = 1; n <= j.twice(); ++n) {
        Eigen::MatrixXd next(n + 1, n + 1);
        const double inv_n = 1.0 / n;
        for (int row = 0; row <= n; ++row) {
            const double row_up = std::sqrt(static_cast<double>(n - row));
            const double row_down = std::sqrt(static_cast<double>(row));
            for (int col = 0; col <= n; ++col) {
                const double col_up = std::sqrt(static_cast<double>(n - col));
                const double col_down = std::sqrt(static_cast<double>(col));
                double acc = 0.0;
                if (row < n && col < n) acc += row_up * col_up * c * prev(row, col);
                if (row < n && col > 0) acc -= row_up * col_down * s * prev(row, col - 1);
                if (row > 0 && col < n) acc += row_down * col_up * s * prev(row - 1, col);
                if (row > 0 && col > 0) acc += row_down * col_down * c * prev(row - 1, col - 1);
                next(row, col) = acc * inv_n;
            }
        }
        prev = std::move(next);
    }
    return WignerDMatrix(j, beta, std::move(prev));
}

WignerDMatrix wigner_d_explicit(HalfInt j, double beta) {
    check_arguments(j, beta);
    const int n = j.twice();
    const long double c = std::cos(0.5L * beta);
    const long double s = std::sin(0.5L * beta);
    const auto lf = [](int k) { return std::lgamma(static_cast<long double>(k) + 1.0L); };

    Eigen::MatrixXd out(n + 1, n + 1);
    for (int row = 0; row <= n; ++row) {
        const int ap = n - row;  // j + m
        const int bp = row;      // j - m
        for (int col = 0; col <= n; ++col) {
            const int a = n - col;  // j + m'
            const int b = col;      // j - m'
            const long double log_pref = 0.5L * (lf(ap) + lf(bp) + lf(a) + lf(b));
            long double sum = 0.0L;
            const int s_lo = std::max(0, a - ap);
            const int s_hi = std::min(a, bp);
            for (int k = s_lo; k <= s_hi; ++k) {
                const int pc = a + bp - 2 * k;
                const int ps = ap - a + 2 * k;
                if ((pc > 0 && c == 0.0L) || (ps > 0 && s == 0.0L)) continue;
                long double log_mag = log_pref - lf(a - k) - lf(k) - lf(ap - a + k) - lf(bp - k);
                int sign = ((ap - a + k) % 2 == 0) ? 1 : -1;
                if (pc > 0) {
                    log_mag += pc * std::log(std::fabs(c));
                    if (c < 0 && pc % 2 == 1) sign = -sign;
                }
                if (ps > 0) {
                    log_mag += ps * std::log(std::fabs(s));
                    if (s < 0 && ps % 2 == 1) sign = -sign;
                }
                sum += sign * std::exp(log_mag);
            }
            out(row, col) = static_cast<double>(sum);
        }
    }
    return WignerDMatrix(j, beta, std::move(out));
}

Eigen::MatrixXd jy_generator(HalfInt j) {
    if (j.twice() < 0) throw std::invalid_argument("jy_generator: 2j must be nonnegative");
    const int n = j.twice();
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int col = 0; col < n; ++col) {
        // <m-1| J_- |m> with m = j - col; (j + m)(j - m + 1) in integer form.
        const double ladder = std::sqrt(static_cast<double>((n - col) * (col + 1)));
        gen(col + 1, col) = 0.5 * ladder;
        gen(col, col + 1) = -0.5 * ladder;
    }
    return gen;
}

std::shared_ptr<const WignerDMatrix> WignerCache::get(HalfInt j, double beta) {
    const auto key = std::make_pair(j.twice(), beta);
    {
        std::shared_lock lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    auto value = std::make_shared<const WignerDMatrix>(wigner_d(j, beta));
    std::unique_lock lock(mutex_);
    entries_[key] = value;
    return value;
}

WignerCache& WignerCache::global() {
    static WignerCache cache;
    return cache;
}

}  // namespace su2phase
