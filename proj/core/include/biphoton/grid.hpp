#pragma once

#include <vector>

#include "biphoton/config.hpp"

namespace biphoton {

/// Centered uniform axis with the half-sample offset: value(i) = (i - n/2) * step,
/// so coordinates run from -(n/2)*step to (n/2 - 1)*step and include zero.
struct AxisGrid {
    int n = 0;
    double step = 0.0;

    double value(int i) const { return (i - n / 2) * step; }
    double half_span() const { return (n / 2) * step; }
    std::vector<double> values() const;
};

struct GridPair {
    AxisGrid spectral;  // rad/fs
    AxisGrid temporal;  // fs, exact discrete-Fourier conjugate of `spectral`
};

/// Measurement-grade grids: the spectral span covers grid_span_sigmas amplitude
/// sigmas of the widest of (pump, phase matching), keeps at least five sinc
/// side-lobe zeros in span, and is stretched so the conjugate temporal step
/// resolves the gate and pump durations. Throws GridResolutionError when any
/// spectral or temporal feature ends up with fewer than 4 samples per FWHM or
/// the temporal window does not fit.
GridPair make_grids(const ExperimentConfig& config);

/// Grids sized by the joint spectral amplitude alone (no gate or timing
/// features); used for Schmidt/entropy work where no time-domain measurement
/// is simulated. Same resolution guarantees on the spectral side.
GridPair make_state_grids(const ExperimentConfig& config);

}  // namespace biphoton
