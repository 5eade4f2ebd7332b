#include "gyrokit/nonlinear.hpp"

#include <cmath>
#include <vector>

#include "gyrokit/constants.hpp"
#include "gyrokit/errors.hpp"

namespace gyrokit {

namespace {

/// All non-negative integer vectors (m_1, ..., m_len) with sum_j j m_j = total.
void enumerate_weighted_compositions(int total, int len,
                                     std::vector<std::vector<int>>& out) {
  std::vector<int> current(static_cast<std::size_t>(len), 0);
  // Depth-first over positions; weights grow with the index, so the remaining
  // budget bounds each digit.
  auto recurse = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == len) {
      if (remaining == 0) out.push_back(current);
      return;
    }
    const int weight = pos + 1;
    for (int m = 0; m * weight <= remaining; ++m) {
      current[static_cast<std::size_t>(pos)] = m;
      self(self, pos + 1, remaining - m * weight);
    }
    current[static_cast<std::size_t>(pos)] = 0;
  };
  recurse(recurse, 0, total);
}

double factorial(int n) {
  double out = 1.0;
  for (int k = 2; k <= n; ++k) out *= k;
  return out;
}

Eigen::Vector2d hadamard_power(const Eigen::Vector2d& v, int n) {
  return v.array().pow(n).matrix();
}

/// Append the harmonic terms of one node and track the tolerance flag.
void append_node_terms(const ChargeInversion& ci, const SeriesCoefficients& sc, int node,
                       double impedance, ErrorHamiltonianReport& report) {
  const double c_node = ci.c(node, node);
  const Eigen::MatrixXd& lam = sc.lambda[static_cast<std::size_t>(node)];
  const Eigen::VectorXd& xi = sc.xi[static_cast<std::size_t>(node)];
  const double two_e = 2.0 * Constants::e;
  for (int n = 1; n <= sc.trunc.n_max; ++n) {
    const int ell_min = (n == 1) ? 2 : 1;
    const double denom = factorial(n) * std::pow(c_node, n);
    for (int ell = ell_min; ell <= sc.trunc.ell_max; ++ell) {
      const double lambda = lam(n, ell);
      if (lambda == 0.0) continue;
      ErrorHamiltonianTerm term;
      term.kind = "charge-harmonic";
      term.node = node;
      term.charge_power = n;
      term.harmonic = ell;
      term.coefficient = -lambda / denom;
      term.has_bound = true;
      term.lhs = std::abs(lambda) * std::pow(two_e, n) / denom;
      term.rhs = std::pow(4.0 * kPi * impedance / Constants::r_q, 0.5 * n);
      term.satisfied = term.lhs < term.rhs;
      report.all_satisfied = report.all_satisfied && term.satisfied;
      report.terms.push_back(term);
    }
    if (n >= 3 && xi(n) != 0.0) {
      ErrorHamiltonianTerm term;
      term.kind = "charge-plain";
      term.node = node;
      term.charge_power = n;
      term.harmonic = 0;
      term.coefficient = -xi(n) / denom;
      report.terms.push_back(term);
    }
  }
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (int i = 0; i < k; ++i) {
    out *= static_cast<double>(n - i);
    out /= static_cast<double>(i + 1);
  }
  return out;
}

double half_binomial(int m) {
  double out = 1.0;
  for (int i = 0; i < m; ++i) {
    out *= (0.5 - i) / (i + 1.0);
  }
  return out;
}

Eigen::MatrixXd power_derivative_table(const std::vector<double>& t_derivatives, int m_max) {
  if (t_derivatives.empty() || t_derivatives.size() > 5) {
    throw DomainError("nonlinear: need the transmission value and up to four derivatives");
  }
  if (m_max < 1) {
    throw DomainError("nonlinear: power table needs m_max >= 1");
  }
  const int n_max = static_cast<int>(t_derivatives.size()) - 1;
  auto d = [&](int n) { return t_derivatives[static_cast<std::size_t>(n)]; };
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m_max + 1, n_max + 1);
  out(0, 0) = 1.0;
  for (int m = 1; m <= m_max; ++m) {
    const double t0 = d(0);
    // Outer derivatives of u^m at u = T, zero past order m.
    auto outer = [&](int k) -> double {
      if (k > m) return 0.0;
      double g = 1.0;
      for (int i = 0; i < k; ++i) g *= static_cast<double>(m - i);
      return g * std::pow(t0, m - k);
    };
    out(m, 0) = std::pow(t0, m);
    if (n_max >= 1) out(m, 1) = outer(1) * d(1);
    if (n_max >= 2) out(m, 2) = outer(2) * d(1) * d(1) + outer(1) * d(2);
    if (n_max >= 3) {
      out(m, 3) = outer(3) * std::pow(d(1), 3) + 3.0 * outer(2) * d(1) * d(2) + outer(1) * d(3);
    }
    if (n_max >= 4) {
      out(m, 4) = outer(4) * std::pow(d(1), 4) + 6.0 * outer(3) * d(1) * d(1) * d(2) +
                  outer(2) * (3.0 * d(2) * d(2) + 4.0 * d(1) * d(3)) + outer(1) * d(4);
    }
  }
  return out;
}

void JunctionDerivatives::validate() const {
  if (!std::isfinite(gap) || gap < 0.0) {
    throw DomainError("nonlinear: junction gap must be finite and non-negative");
  }
  if (power_derivatives.rows() < 2 || power_derivatives.cols() < 2) {
    throw DomainError("nonlinear: derivative table needs at least one power and one order");
  }
  if (!power_derivatives.allFinite()) {
    throw DomainError("nonlinear: derivative table has non-finite entries");
  }
}

void SeriesTruncation::validate() const {
  if (n_max < 1 || m_max < 1 || ell_max < 1) {
    throw DomainError("nonlinear: truncation orders must be at least 1");
  }
}

SeriesCoefficients series_coefficients(const JunctionDerivatives& junction1,
                                       const JunctionDerivatives& junction2,
                                       const SeriesTruncation& trunc) {
  junction1.validate();
  junction2.validate();
  trunc.validate();
  SeriesCoefficients out;
  out.trunc = trunc;
  // Node 1's charge couples through junction 2 and vice versa.
  const std::array<const JunctionDerivatives*, 2> source = {&junction2, &junction1};
  for (int node = 0; node < 2; ++node) {
    const JunctionDerivatives& jd = *source[static_cast<std::size_t>(node)];
    const int m_avail = std::min<int>(trunc.m_max, static_cast<int>(jd.power_derivatives.rows()) - 1);
    const int n_avail = std::min<int>(trunc.n_max, static_cast<int>(jd.power_derivatives.cols()) - 1);
    Eigen::MatrixXd lam = Eigen::MatrixXd::Zero(trunc.n_max + 1, trunc.ell_max + 1);
    Eigen::VectorXd xi = Eigen::VectorXd::Zero(trunc.n_max + 1);
    for (int n = 1; n <= n_avail; ++n) {
      for (int m = 1; m <= m_avail; ++m) {
        const double base =
            half_binomial(m) / std::pow(4.0, m - 1) * (jd.gap / 4.0) * jd.power_derivatives(m, n);
        for (int ell = 1; ell <= std::min(m, trunc.ell_max); ++ell) {
          const int k = m - ell;
          const double sign = (k % 2 == 0) ? 1.0 : -1.0;
          lam(n, ell) -= 2.0 * sign * binomial(2 * m, k) * base;
        }
        const double xi_sign = (m % 2 == 0) ? 1.0 : -1.0;
        xi(n) += xi_sign * binomial(2 * m, m) * base;
      }
    }
    if (!lam.allFinite() || !xi.allFinite()) {
      throw NumericsError("nonlinear: series coefficients are not finite");
    }
    out.lambda[static_cast<std::size_t>(node)] = std::move(lam);
    out.xi[static_cast<std::size_t>(node)] = std::move(xi);
  }
  return out;
}

void ChargeInversion::validate() const {
  if (!c.allFinite() || !q0.allFinite()) {
    throw DomainError("nonlinear: charge relation has non-finite entries");
  }
  const double scale = c.cwiseAbs().maxCoeff();
  if (!(std::abs(c.determinant()) > 1e-14 * scale * scale)) {
    throw DomainError("nonlinear: capacitance matrix is singular");
  }
  for (const auto& g : couplings) {
    if (!g.allFinite()) {
      throw DomainError("nonlinear: coupling table has non-finite entries");
    }
  }
}

InversionResult charge_inversion(const ChargeInversion& ci, const Eigen::Vector2d& q,
                                 int order_k) {
  ci.validate();
  if (order_k < 0 || order_k > 4) {
    throw DomainError("nonlinear: inversion order must lie in [0, 4]");
  }
  if (!q.allFinite()) {
    throw DomainError("nonlinear: charge must be finite");
  }
  const Eigen::Matrix2d c_inv = ci.c.inverse();
  InversionResult out;
  out.x_terms.reserve(static_cast<std::size_t>(order_k) + 1);
  out.x_terms.push_back(c_inv * (q - ci.q0));
  for (int k = 1; k <= order_k; ++k) {
    Eigen::Vector2d xk = Eigen::Vector2d::Zero();
    std::vector<std::vector<int>> compositions;
    enumerate_weighted_compositions(k - 1, k - 1, compositions);
    for (std::size_t gi = 0; gi < ci.couplings.size(); ++gi) {
      const int n = static_cast<int>(gi) + 2;  // velocity power of g_{n+1}
      for (const auto& comp : compositions) {
        int used = 0;
        for (int mj : comp) used += mj;
        const int m0 = n - used;
        if (m0 < 0) continue;
        Eigen::Vector2d product = hadamard_power(out.x_terms[0], m0) / factorial(m0);
        for (std::size_t j = 0; j < comp.size(); ++j) {
          const int mj = comp[j];
          if (mj == 0) continue;
          product = product.cwiseProduct(hadamard_power(out.x_terms[j + 1], mj)) / factorial(mj);
        }
        xk -= c_inv * ci.couplings[gi].cwiseProduct(product);
      }
    }
    out.x_terms.push_back(xk);
  }
  out.velocity = Eigen::Vector2d::Zero();
  for (const auto& term : out.x_terms) out.velocity += term;
  return out;
}

ErrorHamiltonianReport error_hamiltonian_report(const ChargeInversion& ci,
                                                const SeriesCoefficients& coeffs,
                                                const std::array<double, 2>& mode_impedance) {
  ci.validate();
  for (double z : mode_impedance) {
    if (!(z > 0.0) || !std::isfinite(z)) {
      throw DomainError("nonlinear: mode impedances must be positive");
    }
  }
  ErrorHamiltonianReport report;
  for (int node = 0; node < 2; ++node) {
    append_node_terms(ci, coeffs, node, mode_impedance[static_cast<std::size_t>(node)], report);
  }
  const double c_cross = -ci.c(0, 1);  // the off-diagonal stores -C_c
  if (c_cross != 0.0) {
    ErrorHamiltonianTerm term;
    term.kind = "cross-charge";
    term.node = 0;
    term.charge_power = 1;
    term.harmonic = 0;
    term.coefficient = c_cross / (ci.c(0, 0) * ci.c(1, 1));
    report.terms.push_back(term);
  }
  return report;
}

}  // namespace gyrokit
