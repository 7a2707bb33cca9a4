// Command-line front end: every verb runs one canned computation from
// holo/experiments.hpp, prints a human summary, optionally writes the JSON
// report and the CSV series, and exits 0 on a clean pass, 1 + the index of
// the first failed check otherwise (capped at 63). Usage problems exit 64,
// unreadable or malformed inputs 65, internal failures 70.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "holo/channel_io.hpp"
#include "holo/experiments.hpp"
#include "holo/version.hpp"

namespace {

// Hand-rolled key=value config reader ('#' starts a comment). Only
// tolerance-like keys are accepted, per verb; anything else is a typo and
// gets rejected.
std::map<std::string, double> read_config(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw holo::ParseError("cannot open config '" + filename + "'");
    std::map<std::string, double> cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        if (strip(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw holo::ParseError("config line " + std::to_string(lineno) +
                                   ": expected key=value");
        }
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        try {
            std::size_t used = 0;
            const double v = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            cfg[key] = v;
        } catch (const std::exception&) {
            throw holo::ParseError("config line " + std::to_string(lineno) +
                                   ": '" + value + "' is not a number");
        }
    }
    return cfg;
}

// Defaults < config file < HOLO_TOL < explicit flag, per slot. The env
// variable only ever feeds the slot named "tol".
void apply_tolerances(
    const CLI::App* sub, const std::string& config_file,
    std::vector<std::pair<std::string, double*>> slots) {
    std::map<std::string, double> cfg;
    if (!config_file.empty()) cfg = read_config(config_file);
    for (const auto& entry : cfg) {
        const bool known =
            std::any_of(slots.begin(), slots.end(),
                        [&](const auto& s) { return s.first == entry.first; });
        if (!known) {
            throw holo::ParseError("config: unknown key '" + entry.first +
                                   "' for this command");
        }
    }
    for (const auto& [key, slot] : slots) {
        std::string flag = "--" + key;
        for (auto& c : flag) {
            if (c == '_') c = '-';
        }
        if (sub->count(flag) > 0) continue;  // explicit flag wins
        if (const auto it = cfg.find(key); it != cfg.end()) *slot = it->second;
        if (key == "tol") {
            if (const char* env = std::getenv("HOLO_TOL")) {
                try {
                    std::size_t used = 0;
                    const std::string text(env);
                    const double v = std::stod(text, &used);
                    if (used != text.size()) throw std::invalid_argument(text);
                    *slot = v;
                } catch (const std::exception&) {
                    throw holo::ParseError(
                        "HOLO_TOL is set but is not a number");
                }
            }
        }
    }
}

void print_matrix_block(const holo::ExperimentReport& rep) {
    const std::vector<std::string> want{"row", "col", "re", "im"};
    if (rep.series_columns() != want || rep.series().empty()) return;
    int d = 0;
    for (const auto& row : rep.series()) {
        d = std::max(d, int(row[0]) + 1);
        d = std::max(d, int(row[1]) + 1);
    }
    holo::Matrix u = holo::Matrix::Zero(d, d);
    for (const auto& row : rep.series()) {
        u(int(row[0]), int(row[1])) = holo::Complex(row[2], row[3]);
    }
    const Eigen::IOFormat fmt(9, 0, "  ", "\n", "    ", "");
    std::cout << "holonomy:\n" << u.format(fmt) << "\n";
}

void print_report(const holo::ExperimentReport& rep) {
    std::cout << rep.name() << "  (tool " << rep.tool_version << ")\n";
    const auto j = rep.to_json();
    if (!j.at("params").empty()) {
        std::cout << "params:";
        for (const auto& item : j.at("params").items()) {
            std::cout << ' ' << item.key() << '=' << item.value().dump();
        }
        std::cout << '\n';
    }
    std::cout.precision(12);
    for (const auto& item : j.at("scalars").items()) {
        std::cout << "  " << item.key() << " = " << item.value().get<double>()
                  << '\n';
    }
    for (const auto& item : j.at("complexScalars").items()) {
        const double re = item.value()[0].get<double>();
        const double im = item.value()[1].get<double>();
        std::cout << "  " << item.key() << " = " << re
                  << (im < 0 ? " - " : " + ") << std::abs(im) << "i\n";
    }
    print_matrix_block(rep);
    std::cout.precision(3);
    std::cout << std::scientific;
    for (const auto& c : rep.checks()) {
        std::cout << (c.ok() ? "  PASS  " : "  FAIL  ") << c.key
                  << "  residual " << c.residual << "  (tolerance "
                  << c.threshold << ")\n";
    }
    std::cout.unsetf(std::ios::scientific);
    std::cout << "verdict: " << (rep.passed() ? "PASS" : "FAIL") << '\n';
}

std::vector<int> to_int_list(const std::vector<double>& xs,
                             const std::string& what) {
    std::vector<int> out;
    out.reserve(xs.size());
    for (double x : xs) {
        const int n = int(x);
        if (double(n) != x) {
            throw holo::ParseError(what + " entries must be integers");
        }
        out.push_back(n);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"holonomy of quantum channel sequences and smooth families"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(holo::version_string));

    std::string out_file;
    std::string csv_file;
    std::string config_file;
    const auto add_io = [&](CLI::App* sub, bool with_config) {
        sub->add_option("--out", out_file, "write the JSON report to this file");
        sub->add_option("--csv", csv_file,
                        "write the series block as CSV to this file");
        if (with_config) {
            sub->add_option("--config", config_file,
                            "key=value file with tolerance overrides");
        }
    };

    // seq
    std::string seq_file;
    holo::SequenceReportOptions seq_opt;
    CLI::App* seq = app.add_subcommand(
        "seq", "holonomy and consistency checks of a channel sequence file");
    seq->add_option("file", seq_file, "sequence JSON ({\"channels\": [...]})")
        ->required()
        ->check(CLI::ExistingFile);
    seq->add_option("--tol", seq_opt.tol, "generic check tolerance");
    seq->add_option("--rank-tol", seq_opt.rank_tol,
                    "relative singular-value cutoff for polar factors");
    seq->add_option("--seed", seq_opt.seed, "seed for the random-gauge check");
    add_io(seq, true);

    // smooth
    std::string smooth_source;
    std::vector<double> smooth_params;
    holo::SmoothReportOptions smooth_opt;
    CLI::App* smooth = app.add_subcommand(
        "smooth", "holonomy of a smooth family (JSON samples or a named one)");
    smooth
        ->add_option("source", smooth_source,
                     "path JSON file, or a name: unitary_z, phase_flip_ramp, "
                     "damping_ramp, random_k2, random")
        ->required();
    smooth->add_option("--params", smooth_params,
                       "parameters for a named family (comma separated)")
        ->delimiter(',');
    smooth->add_option("--steps", smooth_opt.steps, "integration steps");
    smooth->add_option("--tol", smooth_opt.tol, "unitarity tolerance");
    smooth->add_option("--drift-tol", smooth_opt.drift_tol,
                       "allowed drift between steps and steps/2 results");
    add_io(smooth, true);

    // crosscheck
    holo::CrosscheckOptions cross_opt;
    CLI::App* cross = app.add_subcommand(
        "crosscheck",
        "push one random sequence through every route to the holonomy");
    cross->add_option("--seed", cross_opt.seed, "sequence seed");
    cross->add_option("--length", cross_opt.length, "number of channels");
    cross->add_option("--dim", cross_opt.dim, "system dimension");
    cross->add_option("--kraus", cross_opt.kraus, "operators per channel");
    cross->add_option("--tol", cross_opt.tol, "route agreement tolerance");
    add_io(cross, true);

    // 4pi
    holo::FourPiOptions fourpi_opt;
    CLI::App* fourpi = app.add_subcommand(
        "4pi", "spin-half rotation holonomy over two turns, with detection");
    fourpi->alias("fourpi");
    fourpi->add_option("--points", fourpi_opt.points, "angle grid size");
    fourpi->add_option("--chi", fourpi_opt.chi,
                       "reference-arm phase for the probability curve");
    fourpi->add_option("--scan-points", fourpi_opt.phase_scan_points,
                       "resolution of the phase-setting scan");
    fourpi->add_option("--schrodinger-steps", fourpi_opt.schrodinger_steps,
                       "integration steps per angle");
    add_io(fourpi, false);

    // fixtures
    holo::FixtureOptions fix_opt;
    CLI::App* fixtures = app.add_subcommand(
        "fixtures",
        "closed-form overlap matrices of the flip/damping channel triple");
    fixtures->add_option("--grid", fix_opt.grid, "probability grid")
        ->delimiter(',');
    fixtures->add_option("--tol", fix_opt.tol, "entrywise tolerance");
    add_io(fixtures, true);

    // holonomic
    holo::HolonomicOptions hol_opt;
    std::vector<double> approx_raw;
    CLI::App* holonomic = app.add_subcommand(
        "holonomic", "transport along a moving subspace decomposition");
    holonomic->add_option("--family", hol_opt.family,
                          "bloch_circle, rotating_plane, or rotation_d3");
    holonomic->add_option("--params", hol_opt.params, "family parameters")
        ->delimiter(',');
    holonomic->add_option("--steps", hol_opt.steps, "integration steps");
    holonomic
        ->add_option("--approx", approx_raw,
                     "pinching counts for the measurement approximation")
        ->delimiter(',');
    add_io(holonomic, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 64;
    }

    try {
        holo::ExperimentReport rep = [&]() -> holo::ExperimentReport {
            if (seq->parsed()) {
                apply_tolerances(seq, config_file,
                                 {{"tol", &seq_opt.tol},
                                  {"rank_tol", &seq_opt.rank_tol}});
                return holo::run_sequence_report(
                    holo::sequence_from_json(holo::load_json_file(seq_file)),
                    seq_opt);
            }
            if (smooth->parsed()) {
                apply_tolerances(smooth, config_file,
                                 {{"tol", &smooth_opt.tol},
                                  {"drift_tol", &smooth_opt.drift_tol}});
                smooth_opt.label = smooth_source;
                if (std::filesystem::exists(smooth_source)) {
                    return holo::run_smooth_report(
                        holo::path_from_json(
                            holo::load_json_file(smooth_source)),
                        smooth_opt);
                }
                return holo::run_smooth_report(
                    holo::named_path(smooth_source, smooth_params), smooth_opt);
            }
            if (cross->parsed()) {
                apply_tolerances(cross, config_file, {{"tol", &cross_opt.tol}});
                return holo::run_crosscheck(cross_opt);
            }
            if (fourpi->parsed()) {
                return holo::run_four_pi(fourpi_opt);
            }
            if (fixtures->parsed()) {
                apply_tolerances(fixtures, config_file,
                                 {{"tol", &fix_opt.tol}});
                return holo::run_fixtures(fix_opt);
            }
            if (!approx_raw.empty()) {
                hol_opt.approx_steps = to_int_list(approx_raw, "--approx");
            }
            return holo::run_holonomic(hol_opt);
        }();

        print_report(rep);
        if (!out_file.empty()) holo::save_json_file(out_file, rep.to_json());
        if (!csv_file.empty()) {
            std::ofstream csv(csv_file);
            if (!csv) {
                throw holo::ParseError("cannot open '" + csv_file +
                                       "' for writing");
            }
            csv << rep.to_csv();
        }
        return std::min(rep.exit_code(), 63);
    } catch (const holo::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 65;
    } catch (const holo::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 70;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 70;
    }
}
