#pragma once

#include <Eigen/Dense>

namespace biphoton {

// Centered discrete Fourier transforms on half-sample-offset grids
// x_k = (k - n/2) * step. The pairing is unitary with respect to the grid
// measures: with conjugate steps (step_out = 2*pi/(n*step_in)) the transform
// preserves sum |f|^2 * step^2 exactly, and forward followed by inverse is the
// identity to machine precision.
//
// `forward` uses the kernel exp(-i w t) per axis (spectral -> temporal);
// the inverse kernel is its conjugate.

Eigen::MatrixXcd centered_transform_2d(const Eigen::MatrixXcd& in, double in_step, bool forward);

Eigen::VectorXcd centered_transform_1d(const Eigen::VectorXcd& in, double in_step, bool forward);

}  // namespace biphoton
