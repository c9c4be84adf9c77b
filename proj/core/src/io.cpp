#include "biphoton/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_comments(std::ostream& out, const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << "\n";
}

double parse_number(const std::string& token, std::size_t row, std::size_t col) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size()) {
        std::ostringstream msg;
        msg << "row " << row + 1 << ", column " << col + 1 << ": not a number: \"" << token
            << "\"";
        throw ParseError(msg.str());
    }
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

struct CsvBody {
    std::vector<std::string> comments;       // without the leading '#'
    std::vector<std::vector<std::string>> rows;
};

CsvBody tokenize(const std::string& text) {
    CsvBody body;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::size_t start = line.size() > 1 && line[1] == ' ' ? 2 : 1;
            body.comments.push_back(line.substr(start));
            continue;
        }
        body.rows.push_back(split_csv(line));
    }
    return body;
}

void check_monotone(const std::vector<double>& axis, const char* what) {
    for (std::size_t k = 1; k < axis.size(); ++k) {
        if (!(axis[k] > axis[k - 1])) {
            throw ParseError(std::string(what) + ": coordinates must be strictly increasing");
        }
    }
}

std::map<std::string, std::string> parse_metadata(const std::vector<std::string>& comments) {
    std::map<std::string, std::string> meta;
    for (const auto& c : comments) {
        std::istringstream in(c);
        std::string token;
        while (in >> token) {
            const auto eq = token.find('=');
            if (eq != std::string::npos && eq > 0) {
                meta[token.substr(0, eq)] = token.substr(eq + 1);
            }
        }
    }
    return meta;
}

}  // namespace

std::string format_double(double v) {
    // shortest representation that still round-trips (strtod: no exceptions
    // on subnormals, unlike stod)
    std::string best;
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v &&
            (best.empty() || std::string(buf).size() < best.size())) {
            best = buf;
        }
    }
    return best;
}

std::vector<std::string> provenance_comments(const ExperimentConfig& config) {
    return {std::string("biphoton ") + kVersion, "config " + hex64(config_hash(config))};
}

void write_surface_csv(std::ostream& out, const std::vector<double>& axis_s,
                       const std::vector<double>& axis_i, const Eigen::MatrixXd& values,
                       const std::string& unit, const std::vector<std::string>& comments) {
    write_comments(out, comments);
    out << "# " << unit << "\n";
    out << "";
    for (double wi : axis_i) out << "," << format_double(wi);
    out << "\n";
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        out << format_double(axis_s[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            out << "," << format_double(values(i, j));
        }
        out << "\n";
    }
}

void write_counts_csv(std::ostream& out, const CountsSurface& counts,
                      const std::vector<std::string>& comments) {
    write_comments(out, comments);
    out << "# dwell_s=" << format_double(counts.dwell_s) << " seed=" << counts.seed << "\n";
    out << "# background_rate_hz=" << format_double(counts.background_rate_hz)
        << " peak_singles_rate_hz=" << format_double(counts.peak_singles_rate_hz)
        << " peak_coincidence_rate_hz=" << format_double(counts.peak_coincidence_rate_hz)
        << " coincidence_window_ns=" << format_double(counts.coincidence_window_ns) << "\n";
    out << "# fs\n";
    for (double ti : counts.delays_i_fs) out << "," << format_double(ti);
    out << "\n";
    for (Eigen::Index i = 0; i < counts.counts.rows(); ++i) {
        out << format_double(counts.delays_s_fs[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < counts.counts.cols(); ++j) {
            out << "," << counts.counts(i, j);
        }
        out << "\n";
    }
}

CountsSurface SurfaceFile::to_counts() const {
    if (!is_counts()) throw InvalidInput("surface file carries no acquisition metadata");
    CountsSurface c;
    c.delays_s_fs = axis_s;
    c.delays_i_fs = axis_i;
    c.counts = values.cast<long>();
    auto fetch = [this](const char* key) {
        const auto it = metadata.find(key);
        if (it == metadata.end()) {
            throw ParseError(std::string("counts surface: missing metadata key ") + key);
        }
        char* end = nullptr;
        const double v = std::strtod(it->second.c_str(), &end);
        if (it->second.empty() || end != it->second.c_str() + it->second.size()) {
            throw ParseError("counts surface: metadata key " + std::string(key) +
                             " is not a number: \"" + it->second + "\"");
        }
        return v;
    };
    c.dwell_s = fetch("dwell_s");
    {
        const auto it = metadata.find("seed");
        if (it == metadata.end()) throw ParseError("counts surface: missing metadata key seed");
        char* end = nullptr;
        c.seed = std::strtoull(it->second.c_str(), &end, 10);
        if (it->second.empty() || end != it->second.c_str() + it->second.size()) {
            throw ParseError("counts surface: seed is not an integer: \"" + it->second + "\"");
        }
    }
    c.background_rate_hz = fetch("background_rate_hz");
    c.peak_singles_rate_hz = fetch("peak_singles_rate_hz");
    c.peak_coincidence_rate_hz = fetch("peak_coincidence_rate_hz");
    c.coincidence_window_ns = fetch("coincidence_window_ns");
    return c;
}

ScanSurface SurfaceFile::to_scan() const {
    ScanSurface s;
    s.delays_s_fs = axis_s;
    s.delays_i_fs = axis_i;
    s.values = values;
    s.norm = SurfaceNorm::none;
    return s;
}

SurfaceFile load_surface(const std::string& text) {
    const CsvBody body = tokenize(text);
    if (body.rows.size() < 2) {
        throw ParseError("surface: need a coordinate header row and at least one data row");
    }
    SurfaceFile f;
    for (const auto& c : body.comments) {
        if (c == "fs" || c == "rad/fs") f.unit = c;
    }
    f.metadata = parse_metadata(body.comments);

    const auto& head = body.rows.front();
    if (head.size() < 2 || !head[0].empty()) {
        throw ParseError("surface: first header cell must be empty, then idler coordinates");
    }
    for (std::size_t j = 1; j < head.size(); ++j) {
        f.axis_i.push_back(parse_number(head[j], 0, j));
    }
    const std::size_t cols = f.axis_i.size();

    const std::size_t nrows = body.rows.size() - 1;
    f.values.resize(static_cast<Eigen::Index>(nrows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 1; r < body.rows.size(); ++r) {
        const auto& row = body.rows[r];
        if (row.size() != cols + 1) {
            std::ostringstream msg;
            msg << "surface: row " << r + 1 << " has " << row.size() - 1 << " values, expected "
                << cols;
            throw ParseError(msg.str());
        }
        f.axis_s.push_back(parse_number(row[0], r, 0));
        for (std::size_t j = 1; j < row.size(); ++j) {
            const double v = parse_number(row[j], r, j);
            f.values(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(j - 1)) = v;
            if (v != std::floor(v)) f.integer_body = false;
        }
    }
    check_monotone(f.axis_s, "surface signal axis");
    check_monotone(f.axis_i, "surface idler axis");
    if (f.is_counts()) {
        if (!f.integer_body) throw ParseError("counts surface: body must be integer");
        if (f.values.minCoeff() < 0) {
            throw ParseError("counts surface: negative counts are not allowed");
        }
    }
    return f;
}

SurfaceFile load_surface_file(const std::string& path) {
    return load_surface(read_text_file(path));
}

void write_histogram_csv(std::ostream& out, const Histogram1D& histogram,
                         const std::vector<std::string>& comments) {
    write_comments(out, comments);
    const char* kind = histogram.kind == Histogram1D::Kind::coincidence      ? "coincidence"
                       : histogram.kind == Histogram1D::Kind::singles_signal ? "singles_signal"
                                                                             : "singles_idler";
    out << "# kind=" << kind << "\n";
    out << "delay_fs,value\n";
    for (std::size_t k = 0; k < histogram.delays_fs.size(); ++k) {
        out << format_double(histogram.delays_fs[k]) << "," << format_double(histogram.values[k])
            << "\n";
    }
}

Histogram1D read_histogram_csv(const std::string& text) {
    const CsvBody body = tokenize(text);
    if (body.rows.empty() || body.rows.front() != std::vector<std::string>{"delay_fs", "value"}) {
        throw ParseError("histogram: missing delay_fs,value header");
    }
    Histogram1D h;
    const auto meta = parse_metadata(body.comments);
    if (const auto it = meta.find("kind"); it != meta.end()) {
        if (it->second == "singles_signal") h.kind = Histogram1D::Kind::singles_signal;
        else if (it->second == "singles_idler") h.kind = Histogram1D::Kind::singles_idler;
        else if (it->second == "coincidence") h.kind = Histogram1D::Kind::coincidence;
        else throw ParseError("histogram: unknown kind \"" + it->second + "\"");
    }
    for (std::size_t r = 1; r < body.rows.size(); ++r) {
        const auto& row = body.rows[r];
        if (row.size() != 2) {
            throw ParseError("histogram: row " + std::to_string(r + 1) + " must have 2 columns");
        }
        h.delays_fs.push_back(parse_number(row[0], r, 0));
        h.values.push_back(parse_number(row[1], r, 1));
    }
    check_monotone(h.delays_fs, "histogram delay axis");
    return h;
}

void write_spectrum_csv(std::ostream& out, const SchmidtSpectrum& spectrum,
                        const std::vector<std::string>& comments) {
    write_comments(out, comments);
    out << "n,lambda\n";
    for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k) {
        out << k << "," << format_double(spectrum.eigenvalues[k]) << "\n";
    }
    const EntanglementReport r = report_from(spectrum);
    out << "# entropy_bits=" << format_double(r.entropy_bits)
        << " purity=" << format_double(r.purity)
        << " schmidt_number=" << format_double(r.schmidt_number) << "\n";
}

SpectrumFile read_spectrum_csv(const std::string& text) {
    const CsvBody body = tokenize(text);
    if (body.rows.empty() || body.rows.front() != std::vector<std::string>{"n", "lambda"}) {
        throw ParseError("spectrum: missing n,lambda header");
    }
    SpectrumFile f;
    for (std::size_t r = 1; r < body.rows.size(); ++r) {
        const auto& row = body.rows[r];
        if (row.size() != 2) {
            throw ParseError("spectrum: row " + std::to_string(r + 1) + " must have 2 columns");
        }
        f.spectrum.eigenvalues.push_back(parse_number(row[1], r, 1));
    }
    f.spectrum.mode_count_kept = static_cast<int>(f.spectrum.eigenvalues.size());
    const auto meta = parse_metadata(body.comments);
    auto fetch = [&meta](const char* key, double& out_v) {
        if (const auto it = meta.find(key); it != meta.end()) out_v = std::stod(it->second);
    };
    fetch("entropy_bits", f.summary.entropy_bits);
    fetch("purity", f.summary.purity);
    fetch("schmidt_number", f.summary.schmidt_number);
    return f;
}

void write_curve_csv(std::ostream& out, const EntropyCurve& curve,
                     const std::vector<std::string>& comments) {
    write_comments(out, comments);
    out << "# pm_kind=" << to_string(curve.pm_kind) << "\n";
    out << "bandwidth_nm,entropy_bits,purity\n";
    for (std::size_t k = 0; k < curve.bandwidths_nm.size(); ++k) {
        out << format_double(curve.bandwidths_nm[k]) << "," << format_double(curve.entropy_bits[k])
            << "," << format_double(curve.purity[k]) << "\n";
    }
}

EntropyCurve read_curve_csv(const std::string& text) {
    const CsvBody body = tokenize(text);
    if (body.rows.empty() ||
        body.rows.front() != std::vector<std::string>{"bandwidth_nm", "entropy_bits", "purity"}) {
        throw ParseError("curve: missing bandwidth_nm,entropy_bits,purity header");
    }
    EntropyCurve c;
    const auto meta = parse_metadata(body.comments);
    if (const auto it = meta.find("pm_kind"); it != meta.end()) {
        c.pm_kind = pm_kind_from_string(it->second);
    }
    for (std::size_t r = 1; r < body.rows.size(); ++r) {
        const auto& row = body.rows[r];
        if (row.size() != 3) {
            throw ParseError("curve: row " + std::to_string(r + 1) + " must have 3 columns");
        }
        c.bandwidths_nm.push_back(parse_number(row[0], r, 0));
        c.entropy_bits.push_back(parse_number(row[1], r, 1));
        c.purity.push_back(parse_number(row[2], r, 2));
    }
    check_monotone(c.bandwidths_nm, "curve bandwidth axis");
    return c;
}

std::string report_to_json(const AnalysisReport& report) {
    nlohmann::ordered_json doc;
    doc["entropy_bits"] = report.entanglement.entropy_bits;
    doc["purity"] = report.entanglement.purity;
    doc["schmidt_number"] = report.entanglement.schmidt_number;
    doc["correlation"] = report.correlation;
    doc["background_per_point"] = report.background_per_point;
    doc["points_used"] = report.points_used;
    doc["fits"] = nlohmann::ordered_json::array();
    for (const auto& f : report.fits) {
        doc["fits"].push_back({{"amplitude", f.amplitude},
                               {"center_fs", f.center_fs},
                               {"fwhm_fs", f.fwhm_fs},
                               {"offset", f.offset},
                               {"rms_residual", f.rms_residual}});
    }
    return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open \"" + path + "\" for writing");
    out << text;
    if (!out) throw InvalidInput("failed writing \"" + path + "\"");
}

}  // namespace biphoton
