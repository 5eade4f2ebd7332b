#pragma once

#include <Eigen/Dense>

namespace gyrokit {

/// Matrix exponential exp(a) of a square complex matrix, computed by scaling
/// and squaring with diagonal Pade approximants whose order adapts to the
/// matrix norm. Backward-stable for the generator norms that arise here
/// (propagator substeps); cost is a handful of matrix products plus one LU
/// solve per call.
[[nodiscard]] Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

}  // namespace gyrokit
