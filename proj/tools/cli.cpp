#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <regex>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "su2phase/angle.hpp"
#include "su2phase/interferometer.hpp"

#ifndef SU2PHASE_VERSION
#define SU2PHASE_VERSION "0.0.0"
#endif

namespace su2phase::cli {
namespace {

using ordered_json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;
constexpr int kMaxPhotons = 64;

int parse_int(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw std::invalid_argument("bad " + what + ": '" + text + "'");
    return value;
}

double parse_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value)) {
        throw std::invalid_argument("bad " + what + ": '" + text + "'");
    }
    return value;
}

/// "0.5", "-2e-3", "0.6+0.8i", "-i", "1.5i".
complex parse_complex(std::string text) {
    text.erase(std::remove_if(text.begin(), text.end(), ::isspace), text.end());
    if (text.empty()) throw std::invalid_argument("empty amplitude");
    if (text.back() != 'i') return {parse_double(text, "amplitude"), 0.0};
    text.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = text.size(); k-- > 1;) {
        if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const auto imag_part = [](const std::string& s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return parse_double(s, "amplitude");
    };
    if (split == std::string::npos) return {0.0, imag_part(text)};
    return {parse_double(text.substr(0, split), "amplitude"), imag_part(text.substr(split))};
}

int photon_count(const std::string& text) {
    const int n = parse_int(text, "photon number");
    if (n < 1 || n > kMaxPhotons) {
        throw std::invalid_argument(fmt::format("photon number must be in 1..{}, got {}", kMaxPhotons, n));
    }
    return n;
}

HalfInt parse_spin(const std::string& text) {
    int twice = 0;
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        twice = 2 * parse_int(text, "spin");
    } else {
        if (text.substr(slash + 1) != "2") throw std::invalid_argument("spin must be an integer or k/2: '" + text + "'");
        twice = parse_int(text.substr(0, slash), "spin");
    }
    if (twice < 1 || twice > kMaxPhotons) {
        throw std::invalid_argument(fmt::format("spin must satisfy 1 <= 2j <= {}: '{}'", kMaxPhotons, text));
    }
    return HalfInt::from_twice(twice);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, sep)) parts.push_back(item);
    return parts;
}

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

std::string quote_arg(const std::string& arg) {
    if (!arg.empty() && arg.find_first_of(" \t\n'\"") == std::string::npos) return arg;
    std::string quoted = "'";
    for (char c : arg) quoted += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return quoted + "'";
}

/// Inclusive uniform grid; the default [-pi, pi] range is built as
/// pi (2k - (n-1))/(n-1) so that +-pi/2 and 0 land exactly on nodes.
std::vector<double> uniform_grid(int points, double lo, double hi) {
    std::vector<double> grid(points);
    const int d = points - 1;
    const bool symmetric = lo == -kPi && hi == kPi;
    for (int k = 0; k < points; ++k) {
        if (symmetric) {
            grid[k] = kPi * static_cast<double>(2 * k - d) / d;
        } else {
            grid[k] = k == d ? hi : lo + (hi - lo) * k / d;
        }
    }
    return grid;
}

// --- JSON input checking -------------------------------------------------

int line_of_offset(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

int line_of_key(const std::string& text, const std::string& key) {
    const std::regex pattern("\"" + key + "\"\\s*:");
    std::smatch match;
    if (std::regex_search(text, match, pattern)) return line_of_offset(text, static_cast<std::size_t>(match.position(0)));
    return 1;
}

nlohmann::json parse_object(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::string what = e.what();
        const auto colon = what.find("syntax error");
        throw SchemaError(line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0),
                          colon == std::string::npos ? what : what.substr(colon));
    }
    if (!doc.is_object()) throw SchemaError(1, "top-level value must be an object");
    return doc;
}

/// Field reader tied to the raw text for line numbers.
class Fields {
public:
    Fields(const std::string& text, const nlohmann::json& doc, std::vector<std::string> allowed)
        : text_(text), doc_(doc) {
        for (const auto& [key, value] : doc.items()) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                fail(key, "unknown field '" + key + "'");
            }
        }
    }

    bool has(const std::string& key) const { return doc_.contains(key); }

    [[noreturn]] void fail(const std::string& key, const std::string& message) const {
        throw SchemaError(line_of_key(text_, key), message);
    }

    const nlohmann::json& require(const std::string& key) const {
        if (!has(key)) throw SchemaError(1, "missing required field '" + key + "'");
        return doc_.at(key);
    }

    double number(const std::string& key, const nlohmann::json& v) const {
        if (!v.is_number()) fail(key, "'" + key + "' must be a number");
        return v.get<double>();
    }

    std::int64_t integer(const std::string& key, const nlohmann::json& v, std::int64_t min) const {
        if (!v.is_number_integer()) fail(key, "'" + key + "' must be an integer");
        if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
            fail(key, "'" + key + "' is too large");
        }
        const auto value = v.get<std::int64_t>();
        if (value < min) fail(key, fmt::format("'{}' must be >= {}", key, min));
        return value;
    }

    std::uint64_t seed(const std::string& key) const {
        const auto& v = require(key);
        if (!v.is_number_integer()) fail(key, "'" + key + "' must be an integer");
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.get<std::int64_t>() < 0) fail(key, "'" + key + "' must be >= 0");
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }

    std::string string(const std::string& key, const nlohmann::json& v) const {
        if (!v.is_string()) fail(key, "'" + key + "' must be a string");
        return v.get<std::string>();
    }

    const nlohmann::json& array(const std::string& key) const {
        const auto& v = require(key);
        if (!v.is_array() || v.empty()) fail(key, "'" + key + "' must be a nonempty array");
        return v;
    }

    void common(int& grid_points, double& refine_tol, bool& weighted) const {
        if (has("grid_points")) grid_points = static_cast<int>(integer("grid_points", doc_.at("grid_points"), 2));
        if (grid_points > 1000000) fail("grid_points", "'grid_points' must be <= 1000000");
        if (has("refine_tol")) {
            refine_tol = number("refine_tol", doc_.at("refine_tol"));
            if (!(refine_tol > 0.0)) fail("refine_tol", "'refine_tol' must be positive");
        }
        if (has("weighted")) {
            if (!doc_.at("weighted").is_boolean()) fail("weighted", "'weighted' must be a boolean");
            weighted = doc_.at("weighted").get<bool>();
        }
    }

    double phase(const std::string& key, const nlohmann::json& v) const {
        const double phi = number(key, v);
        if (!(phi >= 0.0 && phi <= kPi)) fail(key, "'" + key + "' must lie in [0, pi]");
        return phi;
    }

    StateSpec state(const std::string& key, const nlohmann::json& v) const {
        const std::string spec = string(key, v);
        try {
            return parse_state(spec);
        } catch (const std::invalid_argument& e) {
            fail(key, "'" + key + "': " + e.what());
        }
    }

private:
    const std::string& text_;
    const nlohmann::json& doc_;
};

// --- output helpers --------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text(const std::string& path, const std::string& body, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << body;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path);
    file << body;
}

std::string render(const Dataset& data, const std::string& format) {
    std::ostringstream body;
    if (format == "json") {
        body << to_json(data).dump(2) << '\n';
    } else {
        write_csv(body, data);
    }
    return body.str();
}

void add_common_metadata(Dataset& data, const std::string& command) {
    data.metadata.insert(data.metadata.begin(), {{"command", command}, {"version", SU2PHASE_VERSION}});
}

ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

StateSpec parse_state(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("unknown state spec '" + text + "'");
    const std::string kind = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    StateSpec spec;
    spec.text = text;
    if (kind == "xnum") {
        const std::string suffix = "-singleport";
        std::string count = arg;
        if (count.size() > suffix.size() && count.compare(count.size() - suffix.size(), suffix.size(), suffix) == 0) {
            count.resize(count.size() - suffix.size());
        }
        const int n = photon_count(count);
        spec.two_mode = TwoModeState::single_port(n);
        spec.angle_sector = x_polarized_number_state(n);
    } else if (kind == "spinupx") {
        const HalfInt j = parse_spin(arg);
        spec.two_mode = TwoModeState::single_port(j.twice());
        spec.angle_sector = spin_up_x_state(j);
    } else if (kind == "fock") {
        std::map<TwoModeState::Key, complex> amps;
        for (const auto& term : split(arg, ';')) {
            const auto eq = term.find('=');
            const auto comma = term.find(',');
            if (eq == std::string::npos || comma == std::string::npos || comma > eq) {
                throw std::invalid_argument("fock terms look like NU,ND=AMP: '" + term + "'");
            }
            const int nu = parse_int(term.substr(0, comma), "photon number");
            const int nd = parse_int(term.substr(comma + 1, eq - comma - 1), "photon number");
            if (nu < 0 || nd < 0 || nu + nd > kMaxPhotons) {
                throw std::invalid_argument(fmt::format("fock photon numbers must be >= 0 with total <= {}", kMaxPhotons));
            }
            amps[{nu, nd}] += parse_complex(term.substr(eq + 1));
        }
        double norm = 0.0;
        for (const auto& [key, a] : amps) norm += std::norm(a);
        if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("fock state has zero norm");
        for (auto& [key, a] : amps) a /= std::sqrt(norm);
        spec.two_mode = TwoModeState(amps);
    } else {
        throw std::invalid_argument("unknown state spec '" + text + "'");
    }
    return spec;
}

Dataset angle_dataset(const StateSpec& state, int points) {
    if (!state.angle_sector) throw std::invalid_argument("angle-dist needs an xnum or spinupx state");
    if (points < 64) throw std::invalid_argument("--points must be >= 64");
    const AngularSector& sector = *state.angle_sector;
    Dataset data;
    data.kind = "angle_polar";
    data.metadata = {{"state", state.text},
                     {"flavor", sector.flavor() == Flavor::photonic ? "photonic" : "spin"},
                     {"j", sector.j().str()},
                     {"points", std::to_string(points)},
                     {"db_floor", format_number(kDbFloor)}};
    Column phi{"phi", uniform_grid(points, -kPi, kPi)};
    Column prob{"P", {}};
    Column db{"dB", {}};
    Column zero{"exact_zero", {}, true};
    const double floor_linear = std::pow(10.0, kDbFloor / 10.0);
    for (double x : phi.values) {
        const double p = angle_distribution(sector, x);
        const double scaled = 2 * kPi * p;
        const bool clamped = scaled <= floor_linear;
        prob.values.push_back(p);
        db.values.push_back(clamped ? kDbFloor : 10.0 * std::log10(scaled));
        zero.values.push_back(clamped ? 1.0 : 0.0);
    }
    data.columns = {std::move(phi), std::move(prob), std::move(db), std::move(zero)};
    return data;
}

Dataset interferometer_dataset(const StateSpec& state, int points, double lo, double hi) {
    if (points < 2) throw std::invalid_argument("--phi-points must be >= 2");
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) throw std::invalid_argument("need phi-min < phi-max");
    const InterferometerLaw law(state.two_mode);
    Dataset data;
    data.kind = "interferometer_sweep";
    data.metadata = {{"state", state.text},
                     {"phi_points", std::to_string(points)},
                     {"phi_min", format_number(lo)},
                     {"phi_max", format_number(hi)}};
    Column phi{"Phi", uniform_grid(points, lo, hi)};
    std::vector<Column> outcome_columns;
    for (const HalfInt& m : law.outcomes()) outcome_columns.push_back({"P_m=" + m.str(), {}});
    Column sum{"sum", {}};
    for (double x : phi.values) {
        const auto probs = law.probabilities(x);
        double total = 0.0;
        for (std::size_t k = 0; k < probs.size(); ++k) {
            outcome_columns[k].values.push_back(probs[k]);
            total += probs[k];
        }
        sum.values.push_back(total);
    }
    data.columns.push_back(std::move(phi));
    for (auto& c : outcome_columns) data.columns.push_back(std::move(c));
    data.columns.push_back(std::move(sum));
    return data;
}

void write_csv(std::ostream& out, const Dataset& data) {
    out << "# kind: " << data.kind << '\n';
    for (const auto& [key, value] : data.metadata) out << "# " << key << ": " << value << '\n';
    for (std::size_t c = 0; c < data.columns.size(); ++c) out << (c ? "," : "") << data.columns[c].name;
    out << '\n';
    const std::size_t rows = data.columns.empty() ? 0 : data.columns.front().values.size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < data.columns.size(); ++c) {
            const Column& col = data.columns[c];
            if (c) out << ',';
            out << (col.boolean ? (col.values[r] != 0.0 ? "1" : "0") : format_number(col.values[r]));
        }
        out << '\n';
    }
}

ordered_json to_json(const Dataset& data) {
    ordered_json doc;
    doc["kind"] = data.kind;
    ordered_json meta = ordered_json::object();
    for (const auto& [key, value] : data.metadata) meta[key] = value;
    doc["metadata"] = meta;
    ordered_json names = ordered_json::array();
    ordered_json columns = ordered_json::object();
    for (const auto& col : data.columns) {
        names.push_back(col.name);
        ordered_json values = ordered_json::array();
        for (double v : col.values) {
            if (col.boolean) {
                values.push_back(v != 0.0);
            } else {
                values.push_back(json_number(v));
            }
        }
        columns[col.name] = std::move(values);
    }
    doc["column_names"] = names;
    doc["columns"] = columns;
    return doc;
}

ExperimentInput parse_experiment(const std::string& text) {
    const nlohmann::json doc = parse_object(text);
    const Fields f(text, doc,
                   {"state", "phi_true", "Phi_true", "n_shots", "seed", "grid_points", "refine_tol", "weighted"});
    if (f.has("phi_true") && f.has("Phi_true")) f.fail("Phi_true", "give either 'phi_true' or 'Phi_true', not both");
    const std::string phi_key = f.has("Phi_true") ? "Phi_true" : "phi_true";

    ExperimentInput input;
    const StateSpec state = f.state("state", f.require("state"));
    input.state_text = state.text;
    ExperimentConfig& config = input.config;
    config.state = state.two_mode;
    config.phi_true = f.phase(phi_key, f.require(phi_key));
    config.n_shots = f.integer("n_shots", f.require("n_shots"), 1);
    config.seed = f.seed("seed");
    f.common(config.grid_points, config.refine_tol, config.weighted);
    return input;
}

SweepInput parse_sweep(const std::string& text) {
    const nlohmann::json doc = parse_object(text);
    const Fields f(text, doc,
                   {"states", "phis", "n_shots", "seeds", "base_seed", "grid_points", "refine_tol", "weighted"});
    SweepInput input;
    for (const auto& v : f.array("states")) input.states.push_back(f.state("states", v).text);
    for (const auto& v : f.array("phis")) input.phis.push_back(f.phase("phis", v));
    for (const auto& v : f.array("n_shots")) input.n_shots.push_back(f.integer("n_shots", v, 1));
    if (f.has("seeds")) input.options.seeds = static_cast<int>(f.integer("seeds", doc.at("seeds"), 1));
    if (input.options.seeds > 100000) f.fail("seeds", "'seeds' must be <= 100000");
    if (f.has("base_seed")) input.options.base_seed = f.seed("base_seed");
    f.common(input.options.grid_points, input.options.refine_tol, input.options.weighted);
    return input;
}

namespace {

ordered_json report_json(const ExperimentInput& input, const ShotCounts& counts, const EstimateReport& report,
                         const std::string& command) {
    const ExperimentConfig& c = input.config;
    ordered_json doc;
    doc["kind"] = "qpsi_report";
    doc["version"] = SU2PHASE_VERSION;
    doc["command"] = command;
    doc["phi_hat"] = report.phi_hat;
    doc["residual"] = report.residual;
    doc["degenerate"] = report.degenerate;
    ordered_json config;
    config["state"] = input.state_text;
    config["phi_true"] = c.phi_true;
    config["n_shots"] = c.n_shots;
    config["seed"] = c.seed;
    config["grid_points"] = c.grid_points;
    config["refine_tol"] = c.refine_tol;
    config["weighted"] = c.weighted;
    doc["config"] = config;
    ordered_json table = ordered_json::array();
    for (std::size_t k = 0; k < counts.outcomes.size(); ++k) {
        table.push_back({{"m", counts.outcomes[k].str()}, {"count", counts.counts[k]}});
    }
    doc["counts"] = table;
    doc["diagnostics"] = {{"n_shots", report.n_shots}, {"seed", report.seed}, {"grid_points", report.grid_points}};
    return doc;
}

Dataset curve_dataset(const EstimateReport& report, const std::string& state) {
    Dataset data;
    data.kind = "qpsi_objective";
    data.metadata = {{"state", state}, {"grid_points", std::to_string(report.grid_points)}};
    data.columns = {{"Phi", report.curve_phi}, {"objective", report.curve_objective}};
    return data;
}

std::string sweep_body(const SweepInput& input, const std::vector<BenchmarkRow>& rows, const std::string& format,
                       const std::string& command) {
    std::vector<std::pair<std::string, std::string>> meta = {
        {"command", command},
        {"version", SU2PHASE_VERSION},
        {"seeds", std::to_string(input.options.seeds)},
        {"base_seed", std::to_string(input.options.base_seed)},
        {"grid_points", std::to_string(input.options.grid_points)},
        {"refine_tol", format_number(input.options.refine_tol)},
        {"weighted", input.options.weighted ? "true" : "false"}};
    std::ostringstream body;
    if (format == "json") {
        ordered_json doc;
        doc["kind"] = "qpsi_benchmark";
        ordered_json m = ordered_json::object();
        for (const auto& [k, v] : meta) m[k] = v;
        doc["metadata"] = m;
        ordered_json list = ordered_json::array();
        for (const auto& r : rows) {
            list.push_back({{"state", r.state},
                            {"phi", r.phi},
                            {"n_shots", r.n_shots},
                            {"rmse", json_number(r.rmse)},
                            {"bias", json_number(r.bias)},
                            {"crb", json_number(r.crb)},
                            {"flagged", r.flagged},
                            {"note", r.note}});
        }
        doc["rows"] = list;
        body << doc.dump(2) << '\n';
    } else {
        body << "# kind: qpsi_benchmark\n";
        for (const auto& [k, v] : meta) body << "# " << k << ": " << v << '\n';
        body << "state,phi,n_shots,rmse,bias,crb,flagged,note\n";
        for (const auto& r : rows) {
            std::string note = r.note;
            std::replace(note.begin(), note.end(), ',', ';');
            std::replace(note.begin(), note.end(), '\n', ' ');
            body << r.state << ',' << format_number(r.phi) << ',' << r.n_shots << ',' << format_number(r.rmse) << ','
                 << format_number(r.bias) << ',' << format_number(r.crb) << ',' << (r.flagged ? 1 : 0) << ','
                 << note << '\n';
        }
    }
    return body.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::string command;
    for (int k = 0; k < argc; ++k) command += (k ? " " : "") + quote_arg(argv[k]);

    CLI::App app{"SU(2) angle distributions, interferometer statistics and phase inference"};
    app.set_version_flag("--version", SU2PHASE_VERSION);
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = SU2PHASE_THREADS or all cores)")->check(CLI::NonNegativeNumber);

    std::string state_text;
    std::string format = "csv";
    std::string out_path;

    auto* angle = app.add_subcommand("angle-dist", "quantum angle distribution on [-pi, pi]");
    int points = 721;
    angle->add_option("--state", state_text, "xnum:N or spinupx:J")->required();
    angle->add_option("--points", points, "grid nodes, >= 64");
    angle->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    angle->add_option("--out", out_path, "output file (default stdout)");

    auto* interf = app.add_subcommand("interf", "outcome probabilities P_m(Phi)");
    int phi_points = 721;
    double phi_min = -kPi;
    double phi_max = kPi;
    interf->add_option("--state", state_text, "xnum:N, spinupx:J or fock:...")->required();
    interf->add_option("--phi-points", phi_points);
    interf->add_option("--phi-min", phi_min);
    interf->add_option("--phi-max", phi_max);
    interf->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    interf->add_option("--out", out_path);

    auto* qpsi = app.add_subcommand("qpsi", "simulate shots and estimate Phi by least squares");
    std::string config_path;
    std::string sweep_path;
    std::string curve_path;
    std::string curve_format = "csv";
    auto* config_opt = qpsi->add_option("--config", config_path, "experiment JSON");
    auto* sweep_opt = qpsi->add_option("--sweep", sweep_path, "benchmark sweep JSON");
    config_opt->excludes(sweep_opt);
    qpsi->add_option("--out", out_path, "report / table file (default stdout)");
    qpsi->add_option("--curve", curve_path, "also write the objective curve (single experiment)");
    qpsi->add_option("--curve-format", curve_format)->check(CLI::IsMember({"csv", "json"}));
    qpsi->add_option("--format", format, "sweep table format")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (angle->parsed()) {
            Dataset data = angle_dataset(parse_state(state_text), points);
            add_common_metadata(data, command);
            write_text(out_path, render(data, format), out);
            return 0;
        }
        if (interf->parsed()) {
            Dataset data = interferometer_dataset(parse_state(state_text), phi_points, phi_min, phi_max);
            add_common_metadata(data, command);
            write_text(out_path, render(data, format), out);
            return 0;
        }
        if (config_path.empty() && sweep_path.empty()) {
            err << "qpsi: give --config or --sweep\n";
            return 1;
        }
        const std::string& source = config_path.empty() ? sweep_path : config_path;
        const std::string text = read_file(source);
        if (!sweep_path.empty()) {
            SweepInput input;
            try {
                input = parse_sweep(text);
            } catch (const SchemaError& e) {
                err << source << ':' << e.line() << ": " << e.what() << '\n';
                return 1;
            }
            input.options.threads = threads;
            std::vector<NamedState> states;
            for (const auto& s : input.states) states.push_back({s, parse_state(s).two_mode});
            const auto rows = benchmark_sweep(states, input.phis, input.n_shots, input.options);
            write_text(out_path, sweep_body(input, rows, format, command), out);
            return 0;
        }
        ExperimentInput input;
        try {
            input = parse_experiment(text);
        } catch (const SchemaError& e) {
            err << source << ':' << e.line() << ": " << e.what() << '\n';
            return 1;
        }
        const ShotCounts counts = simulate_shots(input.config, threads);
        const EstimateReport report = lms_estimate(counts, input.config.state, input.config);
        write_text(out_path, report_json(input, counts, report, command).dump(2) + "\n", out);
        if (!curve_path.empty()) {
            Dataset curve = curve_dataset(report, input.state_text);
            add_common_metadata(curve, command);
            write_text(curve_path, render(curve, curve_format), out);
        }
        if (report.degenerate) {
            err << "qpsi: degenerate estimate (separated objective minima tie)\n";
            return 2;
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace su2phase::cli
