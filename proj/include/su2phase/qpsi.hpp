#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "su2phase/interferometer.hpp"
#include "su2phase/states.hpp"

namespace su2phase {

/// One phase-inference run at a fixed, unknown Phi.
struct ExperimentConfig {
    TwoModeState state;
    double phi_true = 0.0;
    std::int64_t n_shots = 1;
    std::uint64_t seed = 0;
    int grid_points = 2048;
    double refine_tol = 1e-9;
    /// Weight residuals by 1/P_m(Phi) instead of the plain least squares.
    bool weighted = false;

    void validate() const;
};

struct ShotCounts {
    /// Outcome alphabet, descending m.
    std::vector<HalfInt> outcomes;
    std::vector<std::int64_t> counts;
    std::int64_t total = 0;

    std::int64_t count(HalfInt m) const;
};

struct EstimateReport {
    double phi_hat = 0.0;
    /// Objective value at phi_hat.
    double residual = 0.0;
    std::vector<double> curve_phi;
    std::vector<double> curve_objective;
    /// A second, separated grid minimum ties the best one.
    bool degenerate = false;
    std::int64_t n_shots = 0;
    std::uint64_t seed = 0;
    int grid_points = 0;
};

/// Draws config.n_shots outcomes from the interferometer law at
/// config.phi_true. Shot i uses the Philox stream (seed, i), so the counts
/// do not depend on `threads`.
ShotCounts simulate_shots(const ExperimentConfig& config, int threads = 0);

/// Least-squares objective sum_m w_m (f_m - P_m(Phi))^2.
double lms_objective(const InterferometerLaw& law, const std::vector<double>& freqs, double phi,
                     bool weighted = false);

/// Minimizes lms_objective over [0, pi]: uniform grid, then golden-section
/// refinement in the cells around the best node.
EstimateReport lms_estimate_frequencies(const std::vector<double>& freqs, const InterferometerLaw& law,
                                        int grid_points, double refine_tol, bool weighted = false);

EstimateReport lms_estimate(const ShotCounts& counts, const TwoModeState& state,
                            const ExperimentConfig& config);

struct NamedState {
    std::string label;
    TwoModeState state;
};

struct BenchmarkOptions {
    int seeds = 200;
    std::uint64_t base_seed = 1;
    int grid_points = 2048;
    double refine_tol = 1e-9;
    bool weighted = false;
    int threads = 0;
};

struct BenchmarkRow {
    std::string state;
    double phi = 0.0;
    std::int64_t n_shots = 0;
    double rmse = 0.0;
    double bias = 0.0;
    /// 1 / sqrt(n_shots * F(Phi)).
    double crb = 0.0;
    bool flagged = false;
    std::string note;
};

/// Every (state, Phi, n_shots) cell over `seeds` runs with seeds
/// base_seed, base_seed + 1, ... Failing cells come back flagged.
std::vector<BenchmarkRow> benchmark_sweep(const std::vector<NamedState>& states,
                                          const std::vector<double>& phis,
                                          const std::vector<std::int64_t>& shot_schedule,
                                          const BenchmarkOptions& options);

}  // namespace su2phase
