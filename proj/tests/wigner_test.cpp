#include "su2phase/wigner.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "oracles.hpp"

namespace su2phase {
namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

TEST(WignerD, SpinHalfQuarterTurn) {
    const auto d = wigner_d(HalfInt::from_twice(1), kPi / 2);
    const auto up = HalfInt::from_twice(1);
    const auto down = HalfInt::from_twice(-1);
    EXPECT_NEAR(d(up, up), kInvSqrt2, 1e-15);
    EXPECT_NEAR(d(up, down), -kInvSqrt2, 1e-15);
    EXPECT_NEAR(d(down, up), kInvSqrt2, 1e-15);
    EXPECT_NEAR(d(down, down), kInvSqrt2, 1e-15);
}

TEST(WignerD, SpinOneFirstColumn) {
    const auto j = HalfInt::from_int(1);
    const auto d = wigner_d(j, kPi / 2);
    EXPECT_NEAR(d(HalfInt::from_int(1), j), 0.5, 1e-15);
    EXPECT_NEAR(d(HalfInt::from_int(0), j), kInvSqrt2, 1e-15);
    EXPECT_NEAR(d(HalfInt::from_int(-1), j), 0.5, 1e-15);
}

TEST(WignerD, ZeroAngleIsIdentity) {
    for (int tj = 0; tj <= 30; ++tj) {
        const auto d = wigner_d(HalfInt::from_twice(tj), 0.0);
        EXPECT_LE(max_abs(d.matrix() - Eigen::MatrixXd::Identity(tj + 1, tj + 1)), 1e-15) << tj;
    }
}

TEST(WignerD, MatchesGeneratorExponentialOracle) {
    const auto j = HalfInt::from_twice(5);
    const auto d = wigner_d(j, 0.7);
    EXPECT_LE(max_abs(d.matrix() - oracle::rotation_by_eigendecomposition(j, 0.7)), 1e-10);
}

TEST(WignerD, FirstColumnAtQuarterTurnNonnegative) {
    for (int tj = 1; tj <= 64; ++tj) {
        const auto d = wigner_d(HalfInt::from_twice(tj), kPi / 2);
        for (int i = 0; i <= tj; ++i) EXPECT_GE(d.at_index(i, 0), 0.0) << tj << " " << i;
    }
}

TEST(WignerD, OrthogonalAndTransposeSymmetric) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int tj = 0; tj <= 64; ++tj) {
        const auto j = HalfInt::from_twice(tj);
        for (int trial = 0; trial < 20; ++trial) {
            const double beta = angle(rng);
            const auto d = wigner_d(j, beta);
            const Eigen::MatrixXd& m = d.matrix();
            EXPECT_LE(max_abs(m * m.transpose() - Eigen::MatrixXd::Identity(tj + 1, tj + 1)), 1e-11);
            EXPECT_LE(max_abs(wigner_d(j, -beta).matrix() - m.transpose()), 1e-12);
            for (int r = 0; r <= tj; ++r) EXPECT_NEAR(m.row(r).squaredNorm(), 1.0, 1e-12);
        }
    }
}

TEST(WignerD, GroupProperty) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int tj : {1, 2, 7, 16, 33, 64}) {
        const auto j = HalfInt::from_twice(tj);
        for (int trial = 0; trial < 10; ++trial) {
            const double a = angle(rng);
            const double b = angle(rng);
            const Eigen::MatrixXd prod = wigner_d(j, a).matrix() * wigner_d(j, b).matrix();
            EXPECT_LE(max_abs(wigner_d(j, a + b).matrix() - prod), 1e-10);
        }
    }
}

TEST(WignerD, ExplicitSumAgreesForSmallJ) {
    for (int tj = 0; tj <= 24; ++tj) {
        for (double beta : {-2.5, -0.4, 0.9, 1.7, 3.0}) {
            const auto j = HalfInt::from_twice(tj);
            EXPECT_LE(max_abs(wigner_d(j, beta).matrix() - wigner_d_explicit(j, beta).matrix()), 1e-12)
                << tj << " " << beta;
        }
    }
}

TEST(WignerD, LargeJStaysFinite) {
    const auto d = wigner_d(HalfInt::from_twice(kMaxTwiceJ), 1.3);
    EXPECT_TRUE(d.matrix().allFinite());
    const Eigen::MatrixXd& m = d.matrix();
    EXPECT_LE(max_abs(m * m.transpose() - Eigen::MatrixXd::Identity(m.rows(), m.cols())), 1e-11);
}

TEST(WignerD, RejectsBadInput) {
    EXPECT_THROW(wigner_d(HalfInt::from_twice(-1), 0.1), std::invalid_argument);
    EXPECT_THROW(wigner_d(HalfInt::from_twice(2), std::nan("")), std::invalid_argument);
    EXPECT_THROW(wigner_d(HalfInt::from_twice(2), INFINITY), std::invalid_argument);
    EXPECT_THROW(wigner_d(HalfInt::from_twice(kMaxTwiceJ + 1), 0.1), std::invalid_argument);
    const auto d = wigner_d(HalfInt::from_int(1), 0.1);
    EXPECT_THROW(d(HalfInt::from_twice(1), HalfInt::from_int(1)), std::out_of_range);
}

TEST(JyGenerator, SpinHalfIsAntisymmetric) {
    const Eigen::MatrixXd g = jy_generator(HalfInt::from_twice(1));
    ASSERT_EQ(g.rows(), 2);
    EXPECT_DOUBLE_EQ(g(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(g(1, 1), 0.0);
    EXPECT_DOUBLE_EQ(std::fabs(g(0, 1)), 0.5);
    EXPECT_DOUBLE_EQ(g(0, 1), -g(1, 0));
}

TEST(JyGenerator, SpinHalfExponentialMatchesEngine) {
    // exp(beta A) for a 2x2 antisymmetric A = [[0,-1/2],[1/2,0]] is a plain rotation by beta/2.
    const Eigen::MatrixXd g = jy_generator(HalfInt::from_twice(1));
    const double beta = kPi / 2;
    const double w = g(1, 0);
    Eigen::MatrixXd expo(2, 2);
    expo << std::cos(w * beta), -std::sin(w * beta), std::sin(w * beta), std::cos(w * beta);
    EXPECT_LE(max_abs(expo - wigner_d(HalfInt::from_twice(1), beta).matrix()), 1e-14);
}

TEST(JyGenerator, MatchesOracleGenerator) {
    for (int tj = 0; tj <= 12; ++tj) {
        const auto j = HalfInt::from_twice(tj);
        const Eigen::MatrixXcd expected = std::complex<double>(0.0, -1.0) * oracle::jy_matrix(j);
        EXPECT_LE((expected - jy_generator(j).cast<std::complex<double>>()).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(JyGenerator, HalfTurnReflectsProjections) {
    for (int tj = 0; tj <= 12; ++tj) {
        const auto d = wigner_d(HalfInt::from_twice(tj), kPi);
        for (int row = 0; row <= tj; ++row) {
            for (int col = 0; col <= tj; ++col) {
                const double expected_mag = (row + col == tj) ? 1.0 : 0.0;
                EXPECT_NEAR(std::fabs(d.at_index(row, col)), expected_mag, 1e-14);
            }
        }
    }
}

TEST(WignerCache, ConcurrentLookupsAgree) {
    WignerCache cache;
    std::vector<std::thread> pool;
    std::vector<double> seen(8);
    for (int t = 0; t < 8; ++t) {
        pool.emplace_back([&, t] { seen[t] = cache.get(HalfInt::from_twice(9), -kPi / 2)->at_index(3, 4); });
    }
    for (auto& th : pool) th.join();
    for (double v : seen) EXPECT_EQ(v, seen[0]);
    EXPECT_EQ(seen[0], wigner_d(HalfInt::from_twice(9), -kPi / 2).at_index(3, 4));
}

}  // namespace
}  // namespace su2phase
