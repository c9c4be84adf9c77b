#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "biphoton/analysis.hpp"
#include "biphoton/measurement.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/sweep.hpp"

namespace biphoton {

inline constexpr const char* kVersion = "0.1.0";

/// Provenance comment lines ("biphoton <version>", "config <hash>") prepended
/// to every output file.
std::vector<std::string> provenance_comments(const ExperimentConfig& config);

// Surface CSV: '#' comment lines, a "# <unit>" line for the axes, then a body
// whose first row holds the idler coordinates and first column the signal
// coordinates. Counts surfaces carry their acquisition metadata as
// "# key=value" comments and an integer body.

void write_surface_csv(std::ostream& out, const std::vector<double>& axis_s,
                       const std::vector<double>& axis_i, const Eigen::MatrixXd& values,
                       const std::string& unit, const std::vector<std::string>& comments);

void write_counts_csv(std::ostream& out, const CountsSurface& counts,
                      const std::vector<std::string>& comments);

struct SurfaceFile {
    std::vector<double> axis_s, axis_i;
    Eigen::MatrixXd values;
    std::string unit;
    std::map<std::string, std::string> metadata;
    bool integer_body = true;

    bool is_counts() const { return metadata.count("dwell_s") > 0; }
    CountsSurface to_counts() const;
    ScanSurface to_scan() const;
};

/// Parses either surface flavor; malformed rows, non-monotone axes and
/// negative counts raise ParseError with the row/column location.
SurfaceFile load_surface(const std::string& text);
SurfaceFile load_surface_file(const std::string& path);

// Histogram CSV: "delay_fs,value" header row then one row per delay.
void write_histogram_csv(std::ostream& out, const Histogram1D& histogram,
                         const std::vector<std::string>& comments);
Histogram1D read_histogram_csv(const std::string& text);

// Schmidt spectrum CSV: "n,lambda" rows plus a trailing summary comment
// "# entropy_bits=... purity=... schmidt_number=...".
void write_spectrum_csv(std::ostream& out, const SchmidtSpectrum& spectrum,
                        const std::vector<std::string>& comments);
struct SpectrumFile {
    SchmidtSpectrum spectrum;
    EntanglementReport summary;
};
SpectrumFile read_spectrum_csv(const std::string& text);

// Entropy curve CSV: "bandwidth_nm,entropy_bits,purity".
void write_curve_csv(std::ostream& out, const EntropyCurve& curve,
                     const std::vector<std::string>& comments);
EntropyCurve read_curve_csv(const std::string& text);

std::string report_to_json(const AnalysisReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Shortest decimal representation that round-trips a double.
std::string format_double(double v);

}  // namespace biphoton
