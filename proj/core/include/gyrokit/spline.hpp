#pragma once

#include <vector>

namespace gyrokit {

/// Natural cubic smoothing spline on a strictly increasing knot grid.
///
/// The fit minimizes  sum_i (y_i - s(x_i))^2 + lambda * int s''(x)^2 dx  with
/// natural boundary conditions; lambda = 0 yields the interpolating natural
/// cubic spline through the data. The fitted curve is represented by knot
/// values and knot second derivatives, so value and derivatives up to third
/// order are available in closed form on each interval.
class SmoothingSpline {
 public:
  /// Build the fit. Requires x strictly increasing, x.size() == y.size() >= 4,
  /// lambda >= 0. Throws DomainError on invalid input.
  SmoothingSpline(std::vector<double> x, std::vector<double> y, double lambda = 0.0);

  /// Spline value at `x` (must lie inside [x_min(), x_max()]).
  [[nodiscard]] double value(double x) const;

  /// Derivative of the given order (0..3) at `x`. Order 0 is value().
  [[nodiscard]] double derivative(double x, int order) const;

  [[nodiscard]] double x_min() const { return x_.front(); }
  [[nodiscard]] double x_max() const { return x_.back(); }
  [[nodiscard]] std::size_t size() const { return x_.size(); }
  [[nodiscard]] double lambda() const { return lambda_; }

  /// Fitted value at knot i (equals y_i when lambda = 0).
  [[nodiscard]] const std::vector<double>& fitted() const { return m_; }

 private:
  [[nodiscard]] std::size_t locate(double x) const;

  std::vector<double> x_;
  std::vector<double> m_;      // fitted knot values
  std::vector<double> gamma_;  // knot second derivatives (natural: ends zero)
  double lambda_ = 0.0;
};

}  // namespace gyrokit
