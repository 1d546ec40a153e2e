#include "su2phase/qpsi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "su2phase/numeric.hpp"
#include "su2phase/parallel.hpp"
#include "su2phase/philox.hpp"

namespace su2phase {
namespace {

// Outcome probabilities below this are sampled as exact zeros.
constexpr double kSamplingFloor = 1e-15;
constexpr double kWeightFloor = 1e-9;

std::vector<double> sampling_cdf(const std::vector<double>& probs) {
    std::vector<double> cdf(probs.size());
    double total = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        total += probs[k] < kSamplingFloor ? 0.0 : probs[k];
        cdf[k] = total;
    }
    for (auto& c : cdf) c /= total;
    return cdf;
}

std::size_t sample_index(const std::vector<double>& cdf, double u) {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it != cdf.end()) return static_cast<std::size_t>(it - cdf.begin());
    // u beyond the rounded last cdf entry: last outcome with mass
    std::size_t k = cdf.size() - 1;
    while (k > 0 && cdf[k] == cdf[k - 1]) --k;
    return k;
}

}  // namespace

void ExperimentConfig::validate() const {
    state.require_normalized();
    if (!(phi_true >= 0.0 && phi_true <= std::numbers::pi)) {
        throw std::invalid_argument("phi_true must lie in [0, pi]");
    }
    if (n_shots < 1) throw std::invalid_argument("n_shots must be >= 1");
    if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
    if (!(refine_tol > 0.0)) throw std::invalid_argument("refine_tol must be positive");
}

std::int64_t ShotCounts::count(HalfInt m) const {
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        if (outcomes[k] == m) return counts[k];
    }
    return 0;
}

ShotCounts simulate_shots(const ExperimentConfig& config, int threads) {
    config.validate();
    const InterferometerLaw law(config.state);
    const std::vector<double> cdf = sampling_cdf(law.probabilities(config.phi_true));

    const int workers = resolve_threads(threads);
    const auto n = static_cast<std::size_t>(config.n_shots);
    const std::size_t blocks = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    std::vector<std::vector<std::int64_t>> partial(blocks, std::vector<std::int64_t>(cdf.size(), 0));
    parallel_for(blocks, workers, [&](std::size_t b) {
        const std::size_t begin = n * b / blocks;
        const std::size_t end = n * (b + 1) / blocks;
        auto& local = partial[b];
        for (std::size_t i = begin; i < end; ++i) {
            ++local[sample_index(cdf, counter_uniform(config.seed, i))];
        }
    });

    ShotCounts out{law.outcomes(), std::vector<std::int64_t>(cdf.size(), 0), config.n_shots};
    for (const auto& local : partial) {
        for (std::size_t k = 0; k < local.size(); ++k) out.counts[k] += local[k];
    }
    return out;
}

double lms_objective(const InterferometerLaw& law, const std::vector<double>& freqs, double phi,
                     bool weighted) {
    const std::vector<double> probs = law.probabilities(phi);
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        const double r = freqs[k] - probs[k];
        acc += weighted ? r * r / std::max(probs[k], kWeightFloor) : r * r;
    }
    return acc;
}

EstimateReport lms_estimate_frequencies(const std::vector<double>& freqs, const InterferometerLaw& law,
                                        int grid_points, double refine_tol, bool weighted) {
    if (freqs.size() != law.outcomes().size()) {
        throw std::invalid_argument("frequencies do not match the outcome alphabet");
    }
    if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
    if (!(refine_tol > 0.0)) throw std::invalid_argument("refine_tol must be positive");

    const auto objective = [&](double phi) { return lms_objective(law, freqs, phi, weighted); };
    const double step = std::numbers::pi / (grid_points - 1);

    EstimateReport report;
    report.grid_points = grid_points;
    report.curve_phi.resize(grid_points);
    report.curve_objective.resize(grid_points);
    int best = 0;
    for (int k = 0; k < grid_points; ++k) {
        const double phi = k == grid_points - 1 ? std::numbers::pi : k * step;
        report.curve_phi[k] = phi;
        report.curve_objective[k] = objective(phi);
        if (report.curve_objective[k] < report.curve_objective[best]) best = k;
    }
    const auto& curve = report.curve_objective;
    const double j_best = curve[best];

    for (int k = 0; k < grid_points; ++k) {
        if (std::abs(k - best) <= 1) continue;
        const bool local_min = (k == 0 || curve[k] <= curve[k - 1]) &&
                                (k == grid_points - 1 || curve[k] <= curve[k + 1]);
        if (local_min && curve[k] - j_best <= 1e-12 + 1e-9 * j_best) {
            report.degenerate = true;
            break;
        }
    }

    const double lo = report.curve_phi[std::max(best - 1, 0)];
    const double hi = report.curve_phi[std::min(best + 1, grid_points - 1)];
    const auto [refined, refined_value] = golden_section_minimize(objective, lo, hi, refine_tol);
    if (refined_value < j_best || (refined_value == j_best && refined < report.curve_phi[best])) {
        report.phi_hat = std::clamp(refined, 0.0, std::numbers::pi);
        report.residual = refined_value;
    } else {
        report.phi_hat = report.curve_phi[best];
        report.residual = j_best;
    }
    return report;
}

EstimateReport lms_estimate(const ShotCounts& counts, const TwoModeState& state,
                            const ExperimentConfig& config) {
    if (counts.total <= 0) throw std::invalid_argument("lms_estimate: empty counts");
    const InterferometerLaw law(state);
    if (counts.outcomes != law.outcomes() || counts.counts.size() != counts.outcomes.size()) {
        throw std::invalid_argument("lms_estimate: counts do not match the state's outcome alphabet");
    }
    std::int64_t sum = 0;
    for (auto c : counts.counts) {
        if (c < 0) throw std::invalid_argument("lms_estimate: negative count");
        sum += c;
    }
    if (sum != counts.total) throw std::invalid_argument("lms_estimate: counts do not sum to total");

    std::vector<double> freqs;
    freqs.reserve(counts.counts.size());
    for (auto c : counts.counts) freqs.push_back(static_cast<double>(c) / counts.total);
    EstimateReport report =
        lms_estimate_frequencies(freqs, law, config.grid_points, config.refine_tol, config.weighted);
    report.n_shots = counts.total;
    report.seed = config.seed;
    return report;
}

std::vector<BenchmarkRow> benchmark_sweep(const std::vector<NamedState>& states,
                                          const std::vector<double>& phis,
                                          const std::vector<std::int64_t>& shot_schedule,
                                          const BenchmarkOptions& options) {
    if (states.empty() || phis.empty() || shot_schedule.empty()) {
        throw std::invalid_argument("benchmark_sweep: state, phi and shot lists must be nonempty");
    }
    if (options.seeds < 1) throw std::invalid_argument("benchmark_sweep: seeds must be >= 1");

    struct Cell {
        std::size_t state;
        double phi;
        std::int64_t shots;
    };
    std::vector<Cell> cells;
    for (std::size_t s = 0; s < states.size(); ++s) {
        for (double phi : phis) {
            for (auto shots : shot_schedule) cells.push_back({s, phi, shots});
        }
    }

    struct Trial {
        double error = 0.0;
        bool ok = false;
        bool degenerate = false;
        std::string failure;
    };
    const std::size_t seeds = static_cast<std::size_t>(options.seeds);
    std::vector<Trial> trials(cells.size() * seeds);
    parallel_for(trials.size(), resolve_threads(options.threads), [&](std::size_t t) {
        const Cell& cell = cells[t / seeds];
        Trial& trial = trials[t];
        try {
            ExperimentConfig config;
            config.state = states[cell.state].state;
            config.phi_true = cell.phi;
            config.n_shots = cell.shots;
            config.seed = options.base_seed + t % seeds;
            config.grid_points = options.grid_points;
            config.refine_tol = options.refine_tol;
            config.weighted = options.weighted;
            const ShotCounts counts = simulate_shots(config, 1);
            const EstimateReport report = lms_estimate(counts, config.state, config);
            trial.error = report.phi_hat - cell.phi;
            trial.degenerate = report.degenerate;
            trial.ok = true;
        } catch (const std::exception& e) {
            trial.failure = e.what();
        }
    });

    std::vector<BenchmarkRow> rows;
    rows.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const Cell& cell = cells[c];
        BenchmarkRow row;
        row.state = states[cell.state].label;
        row.phi = cell.phi;
        row.n_shots = cell.shots;
        double sum = 0.0;
        double sum_sq = 0.0;
        std::size_t good = 0;
        std::size_t degenerate = 0;
        for (std::size_t s = 0; s < seeds; ++s) {
            const Trial& trial = trials[c * seeds + s];
            if (!trial.ok) {
                row.flagged = true;
                if (row.note.empty()) row.note = trial.failure;
                continue;
            }
            ++good;
            if (trial.degenerate) ++degenerate;
            sum += trial.error;
            sum_sq += trial.error * trial.error;
        }
        if (good > 0) {
            row.bias = sum / good;
            row.rmse = std::sqrt(sum_sq / good);
        } else {
            row.bias = row.rmse = std::numeric_limits<double>::quiet_NaN();
        }
        if (degenerate > 0) {
            row.flagged = true;
            if (row.note.empty()) row.note = std::to_string(degenerate) + " degenerate estimates";
        }
        try {
            const FisherInfo info = InterferometerLaw(states[cell.state].state).fisher(cell.phi);
            row.crb = info.value > 0.0 ? 1.0 / std::sqrt(cell.shots * info.value)
                                       : std::numeric_limits<double>::infinity();
            if (info.indeterminate > 0) {
                row.flagged = true;
                if (row.note.empty()) row.note = "indeterminate Fisher contributions";
            }
        } catch (const std::exception& e) {
            row.crb = std::numeric_limits<double>::quiet_NaN();
            row.flagged = true;
            if (row.note.empty()) row.note = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace su2phase
