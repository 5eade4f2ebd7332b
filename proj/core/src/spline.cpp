#include "gyrokit/spline.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <utility>

#include "gyrokit/errors.hpp"

namespace gyrokit {

namespace {

/// Solve a symmetric tridiagonal system in place (Thomas algorithm).
/// diag/off are the main and super/sub diagonal; rhs is overwritten with x.
void solve_tridiagonal(std::vector<double> diag, std::vector<double> off,
                       std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (diag[i - 1] == 0.0) throw NumericsError("spline: singular tridiagonal system");
    const double w = off[i - 1] / diag[i - 1];
    diag[i] -= w * off[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  if (diag[n - 1] == 0.0) throw NumericsError("spline: singular tridiagonal system");
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] = (rhs[i] - off[i] * rhs[i + 1]) / diag[i];
  }
}

}  // namespace

SmoothingSpline::SmoothingSpline(std::vector<double> x, std::vector<double> y, double lambda)
    : x_(std::move(x)), lambda_(lambda) {
  const std::size_t n = x_.size();
  if (n < 4) throw DomainError("spline: need at least 4 knots");
  if (y.size() != n) throw DomainError("spline: x and y size mismatch");
  if (!(lambda >= 0.0)) throw DomainError("spline: smoothing parameter must be >= 0");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x_[i] < x_[i + 1])) throw DomainError("spline: knots must be strictly increasing");
  }

  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];

  // Divided second differences of the data drive the curvature: rhs = Q^T y,
  // where column j of Q holds (1/h_{j-1}, -1/h_{j-1}-1/h_j, 1/h_j).
  const std::size_t ni = n - 2;  // interior knots
  std::vector<double> rhs(ni);
  for (std::size_t c = 0; c < ni; ++c) {
    const std::size_t j = c + 1;
    rhs[c] = (y[j + 1] - y[j]) / h[j] - (y[j] - y[j - 1]) / h[j - 1];
  }

  std::vector<double> gamma_int(ni, 0.0);
  if (lambda == 0.0) {
    // Interpolating spline: R gamma = Q^T y with R tridiagonal.
    std::vector<double> diag(ni), off(ni > 1 ? ni - 1 : 0);
    for (std::size_t c = 0; c < ni; ++c) {
      const std::size_t j = c + 1;
      diag[c] = (h[j - 1] + h[j]) / 3.0;
      if (c + 1 < ni) off[c] = h[j] / 6.0;
    }
    gamma_int = rhs;
    solve_tridiagonal(std::move(diag), std::move(off), gamma_int);
    m_ = y;
  } else {
    // Penalized fit: (R + lambda Q^T Q) gamma = Q^T y, then m = y - lambda Q gamma.
    using Sparse = Eigen::SparseMatrix<double>;
    Sparse q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(ni));
    Sparse r(static_cast<Eigen::Index>(ni), static_cast<Eigen::Index>(ni));
    std::vector<Eigen::Triplet<double>> tq, tr;
    tq.reserve(3 * ni);
    tr.reserve(3 * ni);
    for (std::size_t c = 0; c < ni; ++c) {
      const auto j = static_cast<Eigen::Index>(c + 1);
      const auto ci = static_cast<Eigen::Index>(c);
      tq.emplace_back(j - 1, ci, 1.0 / h[c]);
      tq.emplace_back(j, ci, -1.0 / h[c] - 1.0 / h[c + 1]);
      tq.emplace_back(j + 1, ci, 1.0 / h[c + 1]);
      tr.emplace_back(ci, ci, (h[c] + h[c + 1]) / 3.0);
      if (c + 1 < ni) {
        tr.emplace_back(ci, ci + 1, h[c + 1] / 6.0);
        tr.emplace_back(ci + 1, ci, h[c + 1] / 6.0);
      }
    }
    q.setFromTriplets(tq.begin(), tq.end());
    r.setFromTriplets(tr.begin(), tr.end());

    Sparse a = r + lambda * Sparse(q.transpose() * q);
    Eigen::SimplicialLDLT<Sparse> solver(a);
    if (solver.info() != Eigen::Success) {
      throw NumericsError("spline: penalized system factorization failed");
    }
    Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(ni));
    Eigen::VectorXd g = solver.solve(b);
    Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(n));
    Eigen::VectorXd m = yv - lambda * (q * g);
    gamma_int.assign(g.data(), g.data() + ni);
    m_.assign(m.data(), m.data() + n);
  }

  gamma_.assign(n, 0.0);
  std::copy(gamma_int.begin(), gamma_int.end(), gamma_.begin() + 1);
}

std::size_t SmoothingSpline::locate(double x) const {
  if (!(x >= x_.front() && x <= x_.back())) {
    throw DomainError("spline: evaluation point outside the knot hull");
  }
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i > 0) --i;
  if (i + 1 >= x_.size()) i = x_.size() - 2;
  return i;
}

double SmoothingSpline::value(double x) const { return derivative(x, 0); }

double SmoothingSpline::derivative(double x, int order) const {
  if (order < 0 || order > 3) throw DomainError("spline: derivative order must be 0..3");
  const std::size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  switch (order) {
    case 0:
      return a * m_[i] + b * m_[i + 1] +
             (h * h / 6.0) * ((a * a * a - a) * gamma_[i] + (b * b * b - b) * gamma_[i + 1]);
    case 1:
      return (m_[i + 1] - m_[i]) / h +
             (h / 6.0) * ((1.0 - 3.0 * a * a) * gamma_[i] + (3.0 * b * b - 1.0) * gamma_[i + 1]);
    case 2:
      return a * gamma_[i] + b * gamma_[i + 1];
    default:
      return (gamma_[i + 1] - gamma_[i]) / h;
  }
}

}  // namespace gyrokit
