#include "gyrokit/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "gyrokit/constants.hpp"
#include "gyrokit/errors.hpp"
#include "gyrokit/expm.hpp"

namespace gyrokit {

namespace {

using Complex = std::complex<double>;
using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

constexpr Complex kI{0.0, 1.0};

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Odd Taylor polynomial of sin evaluated on a matrix argument.
MatrixXcd sin_poly(const MatrixXcd& m, int order) {
  const MatrixXcd m2 = m * m;
  MatrixXcd term = m;
  MatrixXcd out = m;
  double sign = -1.0;
  for (int k = 3; k <= order; k += 2) {
    term = (term * m2) / (static_cast<double>(k) * (k - 1.0));
    out += sign * term;
    sign = -sign;
  }
  return out;
}

/// Column-stacked superoperator of rho -> -(i/hbar)[h, rho] + kappa
/// sum_j D[b_j] rho for Hermitian h and the two mode operators.
MatrixXcd lindblad_superop(const MatrixXcd& h, const MatrixXcd& b1, const MatrixXcd& b2,
                           double kappa) {
  const Index n = h.rows();
  const MatrixXcd id = MatrixXcd::Identity(n, n);
  MatrixXcd l = (-kI / Constants::hbar) * (kron(id, h) - kron(h.transpose(), id));
  for (const MatrixXcd* b : {&b1, &b2}) {
    const MatrixXcd num = b->adjoint() * (*b);
    l += kappa * (kron(b->conjugate(), *b) - 0.5 * kron(id, num) -
                  0.5 * kron(num.transpose(), id));
  }
  return l;
}

/// Drive term split H_d(t) = e^{-i w_s t} d_plus + e^{+i w_s t} d_plus^dag.
MatrixXcd drive_raising_part(const QuantumGyrator& sys) {
  const double root_kappa = std::sqrt(sys.cfg.kappa);
  return (-kI * Constants::hbar * root_kappa / 2.0) *
         (sys.cfg.beta1 * sys.b1.adjoint() + sys.cfg.beta2 * sys.b2.adjoint());
}

/// y = exp(a) v by scaling and truncated Taylor summation; accurate for the
/// mild norms of a single substep generator.
VectorXcd taylor_apply(const MatrixXcd& a, const VectorXcd& v) {
  const double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (nrm * scale > 0.5 && squarings < 40) {
    scale *= 0.5;
    ++squarings;
  }
  const MatrixXcd as = scale * a;
  VectorXcd y = v;
  for (int rep = 0; rep < (1 << squarings); ++rep) {
    VectorXcd term = y;
    VectorXcd acc = y;
    for (int k = 1; k <= 30; ++k) {
      term = (as * term) / static_cast<double>(k);
      acc += term;
      if (term.norm() <= 1e-16 * acc.norm()) break;
    }
    y = acc;
  }
  return y;
}

/// vec of the identity, the trace functional in the column-stacked convention.
VectorXcd vec_identity(Index n) {
  VectorXcd w = VectorXcd::Zero(n * n);
  for (Index i = 0; i < n; ++i) w(i * n + i) = 1.0;
  return w;
}

Eigen::MatrixXcd steady_state_impl(const Eigen::MatrixXcd& v_prop, double* gap_out) {
  const Index n2 = v_prop.rows();
  const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n2))));
  if (n * n != n2 || v_prop.cols() != n2) {
    throw DomainError("lindblad: propagator must be square with perfect-square dimension");
  }
  Eigen::ComplexEigenSolver<MatrixXcd> solver(v_prop);
  if (solver.info() != Eigen::Success) {
    throw NumericsError("lindblad: eigendecomposition of the period propagator failed");
  }
  Index top = 0;
  double top_mod = -1.0;
  for (Index i = 0; i < n2; ++i) {
    const double mod = std::abs(solver.eigenvalues()(i));
    if (mod > top_mod) {
      top_mod = mod;
      top = i;
    }
  }
  double second = 0.0;
  for (Index i = 0; i < n2; ++i) {
    if (i == top) continue;
    second = std::max(second, std::abs(solver.eigenvalues()(i)));
  }
  if (gap_out != nullptr) *gap_out = 1.0 - second;
  if (top_mod > 1.0 + 1e-6) {
    throw NumericsError("lindblad: period propagator is expanding (largest multiplier " +
                        std::to_string(top_mod) + ")");
  }
  if (std::abs(solver.eigenvalues()(top) - 1.0) > 1e-6) {
    throw NumericsError("lindblad: no unit eigenvalue; the map does not preserve a state");
  }
  if (second >= 1.0 - 1e-8) {
    throw NumericsError("lindblad: degenerate unit eigenvalue of the period propagator");
  }
  const VectorXcd vec = solver.eigenvectors().col(top);
  MatrixXcd rho = Eigen::Map<const MatrixXcd>(vec.data(), n, n);
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-300) {
    throw NumericsError("lindblad: traceless fixed point");
  }
  rho /= tr;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> herm(rho);
  if (herm.eigenvalues().minCoeff() < -1e-8) {
    throw NumericsError("lindblad: steady state has a negative population beyond tolerance");
  }
  return rho;
}

}  // namespace

double QuantumGyratorConfig::eta() const {
  return std::pow(2.0 * e_c / (e_l + g * g / (16.0 * e_c)), 0.25);
}

double QuantumGyratorConfig::omega0() const {
  return std::sqrt(8.0 * e_c * e_l) / Constants::hbar;
}

void QuantumGyratorConfig::validate() const {
  if (!(e_c > 0.0) || !std::isfinite(e_c)) {
    throw DomainError("lindblad: charging energy must be positive");
  }
  if (!(e_l > 0.0) || !std::isfinite(e_l)) {
    throw DomainError("lindblad: inductive energy must be positive");
  }
  if (!std::isfinite(g)) {
    throw DomainError("lindblad: coupling energy must be finite");
  }
  if (kappa < 0.0 || !std::isfinite(kappa)) {
    throw DomainError("lindblad: decay rate must be non-negative");
  }
  if (omega_s < 0.0 || !std::isfinite(omega_s)) {
    throw DomainError("lindblad: drive frequency must be non-negative");
  }
  if (sin_order < 1 || sin_order % 2 == 0 || sin_order > 13) {
    throw DomainError("lindblad: sine truncation order must be odd and within [1, 13]");
  }
  if (cap < 1) {
    throw DomainError("lindblad: excitation cap must be at least 1");
  }
  if (levels < cap + 1) {
    throw DomainError("lindblad: per-mode levels must be at least cap + 1");
  }
}

FockSystem FockSystem::build(const QuantumGyratorConfig& cfg) {
  cfg.validate();
  FockSystem sys;
  sys.cap = cfg.cap;
  sys.eta = cfg.eta();
  for (int n1 = 0; n1 <= cfg.cap; ++n1) {
    for (int n2 = 0; n2 + n1 <= cfg.cap; ++n2) {
      sys.states.emplace_back(n1, n2);
    }
  }
  const Index dim = sys.dim();
  auto index_of = [&](int n1, int n2) -> Index {
    for (Index k = 0; k < dim; ++k) {
      if (sys.states[static_cast<std::size_t>(k)] == std::pair<int, int>{n1, n2}) return k;
    }
    return -1;
  };
  sys.b1 = MatrixXcd::Zero(dim, dim);
  sys.b2 = MatrixXcd::Zero(dim, dim);
  for (Index k = 0; k < dim; ++k) {
    const auto [n1, n2] = sys.states[static_cast<std::size_t>(k)];
    if (n1 > 0) sys.b1(index_of(n1 - 1, n2), k) = std::sqrt(static_cast<double>(n1));
    if (n2 > 0) sys.b2(index_of(n1, n2 - 1), k) = std::sqrt(static_cast<double>(n2));
  }
  const Complex charge_scale = -kI / (2.0 * sys.eta);
  sys.phase1 = sys.eta * (sys.b1 + sys.b1.adjoint());
  sys.phase2 = sys.eta * (sys.b2 + sys.b2.adjoint());
  sys.charge1 = charge_scale * (sys.b1 - sys.b1.adjoint());
  sys.charge2 = charge_scale * (sys.b2 - sys.b2.adjoint());
  return sys;
}

QuantumGyrator build_hamiltonian(const QuantumGyratorConfig& cfg) {
  QuantumGyrator out;
  out.cfg = cfg;
  out.fock = FockSystem::build(cfg);
  const FockSystem& f = out.fock;

  const double ratio = cfg.g / (8.0 * cfg.e_c);
  const MatrixXcd sin1 = sin_poly(f.phase1, cfg.sin_order);
  const MatrixXcd sin2 = sin_poly(f.phase2, cfg.sin_order);
  const MatrixXcd a1 = f.charge1 + ratio * sin2;  // mode 1 sees +g/(8Ec) sin(phi_2)
  const MatrixXcd a2 = f.charge2 - ratio * sin1;  // mode 2 sees -g/(8Ec) sin(phi_1)
  MatrixXcd h = 4.0 * cfg.e_c * (a1 * a1 + a2 * a2) +
                0.5 * cfg.e_l * (f.phase1 * f.phase1 + f.phase2 * f.phase2);

  const double scale = std::max(h.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw NumericsError("lindblad: assembled Hamiltonian is not Hermitian");
  }
  h = 0.5 * (h + h.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericsError("lindblad: Hamiltonian diagonalization failed");
  }
  out.hamiltonian = h;
  out.energies = solver.eigenvalues();
  out.modes = solver.eigenvectors();
  out.b1 = out.modes.adjoint() * f.b1 * out.modes;
  out.b2 = out.modes.adjoint() * f.b2 * out.modes;
  return out;
}

Eigen::MatrixXcd liouvillian(const QuantumGyrator& sys, double t) {
  MatrixXcd h = sys.energies.cast<Complex>().asDiagonal();
  if (sys.cfg.kappa > 0.0) {
    const MatrixXcd d_plus = drive_raising_part(sys);
    const Complex phase = std::exp(-kI * sys.cfg.omega_s * t);
    h += phase * d_plus + std::conj(phase) * d_plus.adjoint();
  }
  return lindblad_superop(h, sys.b1, sys.b2, sys.cfg.kappa);
}

Eigen::MatrixXcd period_propagator(const QuantumGyrator& sys, int substeps) {
  if (substeps < 64) {
    throw DomainError("lindblad: period propagator needs at least 64 substeps");
  }
  if (!(sys.cfg.omega_s > 0.0)) {
    throw DomainError("lindblad: period propagator needs a positive drive frequency");
  }
  const Index n = sys.fock.dim();
  const MatrixXcd id = MatrixXcd::Identity(n, n);

  const MatrixXcd h0 = sys.energies.cast<Complex>().asDiagonal();
  const MatrixXcd l_static = lindblad_superop(h0, sys.b1, sys.b2, sys.cfg.kappa);
  const MatrixXcd d_plus = drive_raising_part(sys);
  const MatrixXcd d_minus = d_plus.adjoint();
  const MatrixXcd k_plus =
      (-kI / Constants::hbar) * (kron(id, d_plus) - kron(d_plus.transpose(), id));
  const MatrixXcd k_minus =
      (-kI / Constants::hbar) * (kron(id, d_minus) - kron(d_minus.transpose(), id));

  const double dt = kTwoPi / sys.cfg.omega_s / substeps;
  MatrixXcd v = MatrixXcd::Identity(n * n, n * n);
  MatrixXcd gen(n * n, n * n);
  for (int k = 0; k < substeps; ++k) {
    const double tm = (k + 0.5) * dt;
    const Complex phase = std::exp(-kI * sys.cfg.omega_s * tm);
    gen = l_static + phase * k_plus + std::conj(phase) * k_minus;
    v = (expm(MatrixXcd(dt * gen)) * v).eval();
  }

  const VectorXcd w = vec_identity(n);
  const double trace_residual = (v.adjoint() * w - w).cwiseAbs().maxCoeff();
  if (trace_residual > 1e-8 * static_cast<double>(n)) {
    throw NumericsError("lindblad: period propagator does not preserve the trace (residual " +
                        std::to_string(trace_residual) + ")");
  }
  return v;
}

Eigen::MatrixXcd steady_state(const Eigen::MatrixXcd& v_prop) {
  return steady_state_impl(v_prop, nullptr);
}

std::pair<Complex, Complex> rotating_frame_amplitudes(const QuantumGyrator& sys,
                                                      const Eigen::MatrixXcd& rho_ss,
                                                      int substeps) {
  if (substeps < 64) {
    throw DomainError("lindblad: orbit averaging needs at least 64 substeps");
  }
  const Index n = sys.fock.dim();
  if (rho_ss.rows() != n || rho_ss.cols() != n) {
    throw DomainError("lindblad: steady state dimension does not match the system");
  }
  const MatrixXcd id = MatrixXcd::Identity(n, n);
  const MatrixXcd h0 = sys.energies.cast<Complex>().asDiagonal();
  const MatrixXcd l_static = lindblad_superop(h0, sys.b1, sys.b2, sys.cfg.kappa);
  const MatrixXcd d_plus = drive_raising_part(sys);
  const MatrixXcd d_minus = d_plus.adjoint();
  const MatrixXcd k_plus =
      (-kI / Constants::hbar) * (kron(id, d_plus) - kron(d_plus.transpose(), id));
  const MatrixXcd k_minus =
      (-kI / Constants::hbar) * (kron(id, d_minus) - kron(d_minus.transpose(), id));

  const double dt = kTwoPi / sys.cfg.omega_s / substeps;
  VectorXcd state = Eigen::Map<const VectorXcd>(rho_ss.data(), n * n);
  Complex acc1{0.0, 0.0};
  Complex acc2{0.0, 0.0};
  for (int k = 0; k < substeps; ++k) {
    const double t = k * dt;
    const Complex weight = std::exp(kI * sys.cfg.omega_s * t);
    const MatrixXcd rho = Eigen::Map<const MatrixXcd>(state.data(), n, n);
    acc1 += weight * (sys.b1 * rho).trace();
    acc2 += weight * (sys.b2 * rho).trace();
    const double tm = t + 0.5 * dt;
    const Complex phase = std::exp(-kI * sys.cfg.omega_s * tm);
    const MatrixXcd gen =
        dt * (l_static + phase * k_plus + std::conj(phase) * k_minus);
    state = taylor_apply(gen, state);
  }
  const double inv = 1.0 / substeps;
  return {acc1 * inv, acc2 * inv};
}

std::pair<double, double> mode_occupations(const QuantumGyrator& sys,
                                           const Eigen::MatrixXcd& rho) {
  const double n1 = (sys.b1.adjoint() * sys.b1 * rho).trace().real();
  const double n2 = (sys.b2.adjoint() * sys.b2 * rho).trace().real();
  return {n1, n2};
}

Eigen::Matrix2cd extract_scattering(const QuantumGyratorConfig& cfg, int substeps) {
  return extract_scattering_diagnostics(cfg, substeps).s;
}

ScatteringDiagnostics extract_scattering_diagnostics(const QuantumGyratorConfig& cfg,
                                                     int substeps) {
  cfg.validate();
  if (!(cfg.kappa > 0.0)) {
    throw DomainError("lindblad: scattering extraction needs a positive decay rate");
  }
  const double root_kappa = std::sqrt(cfg.kappa);
  ScatteringDiagnostics diag;
  diag.eigenvalue_gap = 1.0;
  for (int port = 0; port < 2; ++port) {
    QuantumGyratorConfig single = cfg;
    if (port == 0) {
      single.beta2 = 0.0;
    } else {
      single.beta1 = 0.0;
    }
    const Complex beta = (port == 0) ? single.beta1 : single.beta2;
    if (std::abs(beta) == 0.0) {
      throw DomainError("lindblad: scattering extraction needs a nonzero drive on each port");
    }
    const QuantumGyrator sys = build_hamiltonian(single);
    const MatrixXcd v = period_propagator(sys, substeps);
    double gap = 0.0;
    const MatrixXcd rho = steady_state_impl(v, &gap);
    diag.eigenvalue_gap = std::min(diag.eigenvalue_gap, gap);
    const auto [occ1, occ2] = mode_occupations(sys, rho);
    diag.max_occupation = std::max({diag.max_occupation, occ1, occ2});
    const auto [alpha1, alpha2] = rotating_frame_amplitudes(sys, rho, substeps);
    diag.s(0, port) = -2.0 * root_kappa * alpha1 / beta - (port == 0 ? 1.0 : 0.0);
    diag.s(1, port) = -2.0 * root_kappa * alpha2 / beta - (port == 1 ? 1.0 : 0.0);
  }
  return diag;
}

GyratorCircuit equivalent_circuit(const QuantumGyratorConfig& cfg) {
  cfg.validate();
  if (!(cfg.kappa > 0.0)) {
    throw DomainError("lindblad: the equivalent circuit needs a positive decay rate");
  }
  const double phi0_over_2pi = Constants::phi0 / kTwoPi;
  GyratorCircuit circ;
  circ.c0 = Constants::e * Constants::e / (2.0 * cfg.e_c);
  circ.l0 = phi0_over_2pi * phi0_over_2pi / cfg.e_l;
  circ.l_c = 0.0;
  circ.g = 2.0 * circ.c0 * cfg.g / Constants::hbar;
  circ.z_tl = 1.0 / (circ.c0 * cfg.kappa);
  circ.validate();
  return circ;
}

}  // namespace gyrokit
