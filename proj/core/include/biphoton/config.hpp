#pragma once

#include <cstdint>
#include <string>

namespace biphoton {

enum class PmKind { gaussian, sinc };

std::string to_string(PmKind kind);
PmKind pm_kind_from_string(const std::string& name);

/// All physical and numerical parameters of an experiment run. Defaults match
/// the 790 nm / 6 nm / 80 MHz source with a 1.4 ps two-photon window.
struct ExperimentConfig {
    double pump_center_wavelength_nm = 790.0;
    double spdc_pump_fwhm_nm = 6.0;
    double gate_fwhm_nm = 6.0;
    PmKind pm_kind = PmKind::gaussian;
    double two_photon_window_ps = 1.4;
    double rep_rate_mhz = 80.0;
    double dwell_s = 60.0;
    double background_rate_hz = 1900.0;
    double peak_singles_rate_hz = 5300.0;
    double peak_coincidence_rate_hz = 17.0;
    double coincidence_window_ns = 1.8;
    int grid_points = 256;
    double grid_span_sigmas = 8.0;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Throws InvalidInput naming the violated field. grid_points must be a power
/// of two >= 64; dwell_s may be zero, everything else strictly positive.
void validate(const ExperimentConfig& config);

/// Parses the flat key-value JSON document. Unknown keys, non-numeric values
/// and violated invariants raise ParseError naming the offending key.
ExperimentConfig load_config(const std::string& text);

ExperimentConfig load_config_file(const std::string& path);

/// Canonical serialization; load_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// FNV-1a hash of the canonical serialization, for output provenance comments.
std::uint64_t config_hash(const ExperimentConfig& config);

// Scales derived from a config, in internal units (fs, rad/fs).
struct DerivedScales {
    double pump_sigma;         // intensity sigma of the pump spectrum along the sum axis
    double pm_sigma;           // gaussian phase-matching intensity sigma along the difference axis
    double boxcar_width_fs;    // full width of the difference-time support (sinc kind)
    double pump_tl_fwhm_fs;    // transform-limited pump intensity duration
    double gate_tl_fwhm_fs;    // transform-limited gate intensity duration
    double window_fs;          // two-photon window in fs
};

DerivedScales derive_scales(const ExperimentConfig& config);

/// Full width of the difference-time support produced by a two-photon window:
/// pairs sit symmetrically inside the single-photon arrival window, so the
/// support is twice that window, itself ~10% wider than the quoted
/// coherence-time figure. Used by both phase-matching kinds.
double diff_time_support(double window_fs);

}  // namespace biphoton
