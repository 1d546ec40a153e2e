#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "su2phase/qpsi.hpp"
#include "su2phase/states.hpp"

namespace su2phase::cli {

/// A parsed --state argument.
///   xnum:N             x-polarized N-photon state (single-port |N,0> at the interferometer)
///   xnum:N-singleport  same input, spelled out
///   spinupx:J          spin J (integer or k/2) pointing along x; single-port |2J,0>
///   fock:NU,ND=AMP;... explicit two-mode superposition, AMP like 0.5, -1e-3, 0.6+0.8i;
///                      rescaled to unit norm
struct StateSpec {
    std::string text;
    TwoModeState two_mode;
    /// Angle-picture ladder; empty for fock superpositions.
    std::optional<AngularSector> angle_sector;
};

StateSpec parse_state(const std::string& text);

struct Column {
    std::string name;
    std::vector<double> values;
    bool boolean = false;
};

struct Dataset {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<Column> columns;
};

constexpr double kDbFloor = -200.0;

/// phi on [-pi, pi] (inclusive, `points` nodes), P(phi), dB = 10 log10(2 pi P)
/// clamped at kDbFloor, and exact_zero marking the clamped rows.
Dataset angle_dataset(const StateSpec& state, int points);

/// Phi on [lo, hi] (inclusive), one P_m column per outcome m = j..-j, and their sum.
Dataset interferometer_dataset(const StateSpec& state, int points, double lo, double hi);

void write_csv(std::ostream& out, const Dataset& data);
nlohmann::ordered_json to_json(const Dataset& data);

/// Schema violation in a JSON input, with the 1-based line it points at.
class SchemaError : public std::runtime_error {
public:
    SchemaError(int line, const std::string& message)
        : std::runtime_error(message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct ExperimentInput {
    std::string state_text;
    ExperimentConfig config;
};

struct SweepInput {
    std::vector<std::string> states;
    std::vector<double> phis;
    std::vector<std::int64_t> n_shots;
    BenchmarkOptions options;
};

ExperimentInput parse_experiment(const std::string& text);
SweepInput parse_sweep(const std::string& text);

/// Runs the command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace su2phase::cli
