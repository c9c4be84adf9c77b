#include "biphoton/cli.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "biphoton/errors.hpp"
#include "biphoton/io.hpp"

namespace biphoton {

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
};

ExperimentConfig config_from(const CommonOpts& opts) {
    if (opts.config_path.empty()) return ExperimentConfig{};
    return load_config_file(opts.config_path);
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const auto dot = path.rfind('.');
    const auto slash = path.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return path + suffix;
    }
    return path.substr(0, dot) + suffix + path.substr(dot);
}

void add_common(CLI::App* cmd, CommonOpts& opts, const std::string& default_out) {
    cmd->add_option("--config", opts.config_path, "configuration JSON file");
    cmd->add_option("--out", opts.out_path, "output path")->default_val(default_out);
}

void emit_surface(const ExperimentConfig& config, const std::string& path, bool temporal,
                  std::ostream& log) {
    const auto jsa = build_jsa(config);
    const JointDensity d = temporal ? density(to_temporal(jsa)) : density(jsa);
    std::ostringstream buf;
    write_surface_csv(buf, d.grid_s.values(), d.grid_i.values(), d.values,
                      temporal ? "fs" : "rad/fs", provenance_comments(config));
    write_text_file(path, buf.str());
    log << "wrote " << path << "\n";
}

void emit_histogram(const Histogram1D& h, const ExperimentConfig& config, const std::string& path,
                    std::ostream& log) {
    std::ostringstream buf;
    write_histogram_csv(buf, h, provenance_comments(config));
    write_text_file(path, buf.str());
    log << "wrote " << path << "\n";
}

ScanSurface run_jtd_scan(const ExperimentConfig& config, double span_fs, double step_fs) {
    const auto grids = make_grids(config);
    const JointDensity d = density(to_temporal(build_jsa(config, grids)));
    const GateProfile gate = gate_profile(config, grids.temporal);
    if (span_fs > 0.0 && step_fs > 0.0) return jtd_scan(d, gate, config, span_fs, step_fs);
    return jtd_scan(d, gate, config);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"two-photon joint temporal density simulator and analyzer"};
    app.require_subcommand(1);

    CommonOpts jsa_opts, jtd_opts, scan_opts, profiles_opts, jtdscan_opts, schmidt_opts,
        sweep_opts, synth_opts, analyze_opts;

    auto* jsa_cmd = app.add_subcommand("jsa", "emit the joint spectral density surface");
    add_common(jsa_cmd, jsa_opts, "jsa.csv");

    auto* jtd_cmd = app.add_subcommand("jtd", "emit the joint temporal density surface");
    add_common(jtd_cmd, jtd_opts, "jtd.csv");

    auto* scan_cmd =
        app.add_subcommand("scan", "common-delay pump scan: singles and coincidence histograms");
    add_common(scan_cmd, scan_opts, "scan.csv");

    auto* profiles_cmd = app.add_subcommand(
        "profiles", "theoretical coincidence profiles across pump bandwidths");
    add_common(profiles_cmd, profiles_opts, "profiles.csv");
    std::vector<double> profile_bandwidths{6.0, 3.6, 2.2, 1.1};
    profiles_cmd->add_option("--bandwidths", profile_bandwidths, "pump bandwidths in nm");

    auto* jtdscan_cmd = app.add_subcommand("jtdscan", "two-dimensional delay-grid density scan");
    add_common(jtdscan_cmd, jtdscan_opts, "jtdscan.csv");
    double scan_span = 0.0, scan_step = 0.0;
    jtdscan_cmd->add_option("--span-fs", scan_span, "delay span override (fs)");
    jtdscan_cmd->add_option("--step-fs", scan_step, "delay step override (fs)");

    auto* schmidt_cmd =
        app.add_subcommand("schmidt", "Schmidt spectrum and entanglement report of the state");
    add_common(schmidt_cmd, schmidt_opts, "schmidt.csv");

    auto* sweep_cmd = app.add_subcommand("sweep", "entropy versus pump bandwidth");
    add_common(sweep_cmd, sweep_opts, "sweep.csv");
    std::string sweep_pm = "gaussian";
    double sweep_min = 0.5, sweep_max = 8.0;
    int sweep_steps = 32;
    bool sweep_parallel = false;
    sweep_cmd->add_option("--pm", sweep_pm, "phase matching: gaussian, sinc or both")
        ->check(CLI::IsMember({"gaussian", "sinc", "both"}));
    sweep_cmd->add_option("--min", sweep_min, "lowest bandwidth (nm)");
    sweep_cmd->add_option("--max", sweep_max, "highest bandwidth (nm)");
    sweep_cmd->add_option("--steps", sweep_steps, "number of sweep points");
    sweep_cmd->add_flag("--parallel", sweep_parallel, "evaluate sweep points concurrently");

    auto* synth_cmd = app.add_subcommand("synth", "synthesize Poisson counts for a density scan");
    add_common(synth_cmd, synth_opts, "synth.csv");
    std::uint64_t seed = 1;
    synth_cmd->add_option("--seed", seed, "random seed");
    double synth_span = 0.0, synth_step = 0.0;
    synth_cmd->add_option("--span-fs", synth_span, "delay span override (fs)");
    synth_cmd->add_option("--step-fs", synth_step, "delay step override (fs)");

    auto* analyze_cmd = app.add_subcommand("analyze", "recover entanglement from a counts file");
    std::string analyze_input;
    analyze_cmd->add_option("input", analyze_input, "counts or surface CSV")->required();
    add_common(analyze_cmd, analyze_opts, "report.json");
    bool no_background = false;
    analyze_cmd->add_flag("--no-background", no_background, "skip background subtraction");

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());  // CLI11 consumes arguments from the back
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (jsa_cmd->parsed()) {
        emit_surface(config_from(jsa_opts), jsa_opts.out_path, false, out);
    } else if (jtd_cmd->parsed()) {
        emit_surface(config_from(jtd_opts), jtd_opts.out_path, true, out);
    } else if (scan_cmd->parsed()) {
        const auto config = config_from(scan_opts);
        const auto grids = make_grids(config);
        const JointDensity d = density(to_temporal(build_jsa(config, grids)));
        const GateProfile gate = gate_profile(config, grids.temporal);
        const auto scan = common_delay_scan(d, gate, default_scan_delays(config));
        emit_histogram(scan.singles_signal, config,
                       with_suffix(scan_opts.out_path, "_singles_signal"), out);
        emit_histogram(scan.singles_idler, config,
                       with_suffix(scan_opts.out_path, "_singles_idler"), out);
        emit_histogram(scan.coincidence, config, with_suffix(scan_opts.out_path, "_coincidence"),
                       out);
    } else if (profiles_cmd->parsed()) {
        const auto base = config_from(profiles_opts);
        std::vector<ExperimentConfig> configs;
        for (double bw : profile_bandwidths) {
            ExperimentConfig c = base;
            c.spdc_pump_fwhm_nm = bw;
            configs.push_back(c);
        }
        const auto profiles = theoretical_profiles(configs);
        for (std::size_t k = 0; k < profiles.size(); ++k) {
            std::ostringstream tag;
            tag << "_" << format_double(profile_bandwidths[k]) << "nm";
            emit_histogram(profiles[k], configs[k], with_suffix(profiles_opts.out_path, tag.str()),
                           out);
        }
    } else if (jtdscan_cmd->parsed()) {
        const auto config = config_from(jtdscan_opts);
        const ScanSurface surface = run_jtd_scan(config, scan_span, scan_step);
        std::ostringstream buf;
        write_surface_csv(buf, surface.delays_s_fs, surface.delays_i_fs, surface.values, "fs",
                          provenance_comments(config));
        write_text_file(jtdscan_opts.out_path, buf.str());
        out << "wrote " << jtdscan_opts.out_path << "\n";
    } else if (schmidt_cmd->parsed()) {
        const auto config = config_from(schmidt_opts);
        const auto spectrum = schmidt_decompose(build_jsa(config, make_state_grids(config)));
        std::ostringstream buf;
        write_spectrum_csv(buf, spectrum, provenance_comments(config));
        write_text_file(schmidt_opts.out_path, buf.str());
        out << "wrote " << schmidt_opts.out_path << "\n";
    } else if (sweep_cmd->parsed()) {
        const auto config = config_from(sweep_opts);
        std::vector<PmKind> kinds;
        if (sweep_pm == "both") {
            kinds = {PmKind::gaussian, PmKind::sinc};
        } else {
            kinds = {pm_kind_from_string(sweep_pm)};
        }
        for (PmKind kind : kinds) {
            const auto curve =
                entropy_vs_bandwidth(sweep_min, sweep_max, sweep_steps, kind, config, sweep_parallel);
            const std::string path = kinds.size() == 1
                                         ? sweep_opts.out_path
                                         : with_suffix(sweep_opts.out_path, "_" + to_string(kind));
            std::ostringstream buf;
            write_curve_csv(buf, curve, provenance_comments(config));
            write_text_file(path, buf.str());
            out << "wrote " << path << "\n";
        }
    } else if (synth_cmd->parsed()) {
        const auto config = config_from(synth_opts);
        const ScanSurface surface = run_jtd_scan(config, synth_span, synth_step);
        const CountsSurface counts = synthesize_counts(surface, config, seed);
        std::ostringstream buf;
        write_counts_csv(buf, counts, provenance_comments(config));
        write_text_file(synth_opts.out_path, buf.str());
        out << "wrote " << synth_opts.out_path << "\n";
    } else if (analyze_cmd->parsed()) {
        const SurfaceFile file = load_surface_file(analyze_input);
        AnalysisReport report;
        if (file.is_counts()) {
            report = analyze_jtd(file.to_counts(), !no_background);
        } else {
            report = analyze_jtd(file.to_scan());
        }
        write_text_file(analyze_opts.out_path, report_to_json(report));
        out << "wrote " << analyze_opts.out_path << "\n";
    }
    return 0;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args) {
    return cli_dispatch(args, std::cout, std::cerr);
}

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run(args, out, err);
    } catch (const InvalidInput& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace biphoton
