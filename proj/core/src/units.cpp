#include "biphoton/units.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "biphoton/errors.hpp"

namespace biphoton {

double bandwidth_to_angular_frequency(const BandwidthSpec& spec) {
    if (spec.center_wavelength_nm <= 0.0) {
        throw InvalidInput("bandwidth_to_angular_frequency: center wavelength must be positive, got " +
                           std::to_string(spec.center_wavelength_nm) + " nm");
    }
    if (spec.fwhm_wavelength_nm < 0.0) {
        throw InvalidInput("bandwidth_to_angular_frequency: bandwidth must be non-negative");
    }
    const double l0 = spec.center_wavelength_nm;
    return 2.0 * std::numbers::pi * kSpeedOfLightNmPerFs * spec.fwhm_wavelength_nm / (l0 * l0);
}

double transform_limited_duration(double freq_fwhm_per_fs) {
    if (freq_fwhm_per_fs <= 0.0) {
        throw InvalidInput("transform_limited_duration: frequency FWHM must be positive");
    }
    return kGaussianTimeBandwidthProduct / freq_fwhm_per_fs;
}

double transform_limited_bandwidth(double duration_fwhm_fs) {
    if (duration_fwhm_fs <= 0.0) {
        throw InvalidInput("transform_limited_bandwidth: duration FWHM must be positive");
    }
    return kGaussianTimeBandwidthProduct / duration_fwhm_fs;
}

double intensity_sigma(double fwhm) { return fwhm / kFwhmPerSigma; }

double amplitude_sigma(double fwhm) { return std::numbers::sqrt2 * intensity_sigma(fwhm); }

}  // namespace biphoton
