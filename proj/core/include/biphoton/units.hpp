#pragma once

// Physical constants and conversions between wavelength bandwidth, frequency
// bandwidth and pulse duration. Internal units are femtoseconds and rad/fs so
// that magnitudes stay near unity.

namespace biphoton {

inline constexpr double kSpeedOfLightNmPerFs = 299.792458;

/// FWHM of a Gaussian intensity profile per standard deviation: 2*sqrt(2 ln 2).
inline constexpr double kFwhmPerSigma = 2.354820045030949;

/// Time-bandwidth product (intensity FWHM x frequency FWHM) of a
/// transform-limited Gaussian pulse: 2 ln 2 / pi ~ 0.441.
inline constexpr double kGaussianTimeBandwidthProduct = 0.4412712003053032;

/// Half-power argument of the sinc main lobe: sin(x)/x = 1/sqrt(2).
inline constexpr double kSincHalfPowerArg = 1.3915573782515102;

struct BandwidthSpec {
    double fwhm_wavelength_nm = 0.0;
    double center_wavelength_nm = 0.0;
};

/// Intensity-FWHM wavelength bandwidth -> angular-frequency FWHM (rad/fs),
/// first-order dispersion-free mapping 2*pi*c*dl/l^2 at the carrier.
double bandwidth_to_angular_frequency(const BandwidthSpec& spec);

/// Frequency FWHM (cycles/fs) -> transform-limited Gaussian intensity FWHM (fs).
double transform_limited_duration(double freq_fwhm_per_fs);

/// Exact inverse of transform_limited_duration.
double transform_limited_bandwidth(double duration_fwhm_fs);

/// Intensity FWHM -> standard deviation of the intensity profile.
double intensity_sigma(double fwhm);

/// Intensity FWHM -> standard deviation of the amplitude profile (sqrt(2) wider).
double amplitude_sigma(double fwhm);

}  // namespace biphoton
