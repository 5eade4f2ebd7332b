#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "gyrokit/network.hpp"

namespace gyrokit {

/// Parameters of the quantized two-mode gyrator with drive and dissipation.
/// Energies in joules, rates and frequencies in rad/s. Drive amplitudes are
/// incoming flux amplitudes in sqrt(rad/s).
struct QuantumGyratorConfig {
  double e_c = 0.0;      ///< charging energy e^2/(2 c0) [J]
  double e_l = 0.0;      ///< inductive energy (phi0/2pi)^2/l0 [J]
  double g = 0.0;        ///< flux-charge coupling energy [J]
  double kappa = 0.0;    ///< port decay rate [rad/s]
  std::complex<double> beta1{0.0, 0.0};  ///< drive amplitude, port 1
  std::complex<double> beta2{0.0, 0.0};  ///< drive amplitude, port 2
  double omega_s = 0.0;  ///< drive frequency [rad/s]
  int sin_order = 5;     ///< odd Taylor order of the sine of the phase operator
  int cap = 5;           ///< total excitation cap (21 composite states at 5)
  int levels = 6;        ///< per-mode levels; must be >= cap + 1

  /// Zero-point phase spread (2 E_C / (E_L + g^2/(16 E_C)))^(1/4). The
  /// oscillator expansion is meaningful for values well below 1.
  [[nodiscard]] double eta() const;

  /// Mode frequency sqrt(8 E_C E_L)/hbar of the uncoupled harmonic part [rad/s].
  [[nodiscard]] double omega0() const;

  /// Throws DomainError on invalid parameters (non-positive energies or rate,
  /// even/negative sin order, cap < 1, levels < cap + 1).
  void validate() const;
};

/// Two-mode Fock space truncated by total excitation number, with mode
/// lowering operators and the conjugate phase/charge pair built from the
/// zero-point parameter eta.
struct FockSystem {
  int cap = 0;
  double eta = 0.0;
  std::vector<std::pair<int, int>> states;  ///< index -> (n1, n2)
  Eigen::MatrixXcd b1, b2;                  ///< lowering operators
  Eigen::MatrixXcd phase1, phase2;          ///< phi_i = eta (b_i + b_i^dag)
  Eigen::MatrixXcd charge1, charge2;        ///< n_i = (b_i - b_i^dag)/(2 i eta)

  [[nodiscard]] Eigen::Index dim() const { return static_cast<Eigen::Index>(states.size()); }

  static FockSystem build(const QuantumGyratorConfig& cfg);
};

/// Assembled quantized gyrator: Hamiltonian, its eigendecomposition, and the
/// mode operators rotated into the energy eigenbasis (the frame in which the
/// evolution is propagated).
struct QuantumGyrator {
  QuantumGyratorConfig cfg;
  FockSystem fock;
  Eigen::MatrixXcd hamiltonian;  ///< static Hamiltonian, Fock basis [J]
  Eigen::VectorXd energies;      ///< eigenvalues [J]
  Eigen::MatrixXcd modes;        ///< eigenvector columns (Fock -> eigenbasis)
  Eigen::MatrixXcd b1, b2;       ///< lowering operators in the eigenbasis
};

/// Build the static Hamiltonian
///   H = sum_i 4 E_C (n_i - (-1)^i (g/8E_C) sin(phi_j))^2 + E_L phi_i^2 / 2
/// (j the opposite mode, sine replaced by its odd Taylor polynomial) and
/// diagonalize it. Throws NumericsError if the assembled operator is not
/// Hermitian to tolerance.
[[nodiscard]] QuantumGyrator build_hamiltonian(const QuantumGyratorConfig& cfg);

/// Generator of the driven dissipative evolution at time t, as a
/// column-stacked superoperator in the energy eigenbasis [1/s]:
///   L(t) rho = -(i/hbar)[H + H_drive(t), rho]
///              + kappa sum_j (b_j rho b_j^dag - {b_j^dag b_j, rho}/2),
///   H_drive = -(i hbar sqrt(kappa)/2) (beta_1 e^{-i w_s t} b_1^dag
///              + beta_2 e^{-i w_s t} b_2^dag - h.c.).
[[nodiscard]] Eigen::MatrixXcd liouvillian(const QuantumGyrator& sys, double t);

/// One-period propagator V = prod_k exp(L(t_k + dt/2) dt) over T = 2 pi /
/// omega_s with midpoint-sampled substeps (>= 64). Checks that the result
/// preserves the trace functional; throws NumericsError otherwise.
[[nodiscard]] Eigen::MatrixXcd period_propagator(const QuantumGyrator& sys, int substeps = 512);

/// Fixed point of the period propagator: the right eigenvector of the
/// eigenvalue of unit modulus, reshaped, Hermitized and trace-normalized.
/// Throws NumericsError when the unit eigenvalue is degenerate (second
/// modulus above 1 - 1e-8), when the map is expanding, or when the state has
/// an eigenvalue below -1e-8.
[[nodiscard]] Eigen::MatrixXcd steady_state(const Eigen::MatrixXcd& v_prop);

/// Rotating-frame mode amplitudes of the steady orbit: the period average of
/// e^{+i omega_s t} <b_j> along rho(t) propagated from rho_ss with the same
/// midpoint substeps.
[[nodiscard]] std::pair<std::complex<double>, std::complex<double>> rotating_frame_amplitudes(
    const QuantumGyrator& sys, const Eigen::MatrixXcd& rho_ss, int substeps = 512);

/// Mean occupations <b_j^dag b_j> of a state.
[[nodiscard]] std::pair<double, double> mode_occupations(const QuantumGyrator& sys,
                                                         const Eigen::MatrixXcd& rho);

/// Scattering amplitudes from two single-port drive runs:
///   S_ij = -2 sqrt(kappa) alpha_i / beta_j - delta_ij,
/// where alpha_i is the rotating-frame amplitude of mode i under a drive on
/// port j alone. The normalization is calibrated so that a decoupled port on
/// resonance reflects with +1, matching the impedance-based linear response
/// of the equivalent circuit. Throws DomainError when a drive amplitude for
/// a requested column vanishes.
[[nodiscard]] Eigen::Matrix2cd extract_scattering(const QuantumGyratorConfig& cfg,
                                                  int substeps = 512);

/// Steady photon numbers of the two single-port drive runs used by
/// extract_scattering (diagnostic for the weak-drive regime).
struct ScatteringDiagnostics {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  double max_occupation = 0.0;   ///< largest steady mode occupation seen
  double eigenvalue_gap = 0.0;   ///< 1 - |second eigenvalue| of the propagator
};

/// extract_scattering plus regime diagnostics.
[[nodiscard]] ScatteringDiagnostics extract_scattering_diagnostics(
    const QuantumGyratorConfig& cfg, int substeps = 512);

/// Equivalent mean-field circuit of the quantized model: l_c = 0,
/// c0 = e^2/(2 E_C), l0 = (phi0/2pi)^2/E_L, conductance 2 c0 g / hbar, line
/// impedance 1/(c0 kappa). The load impedance satisfies
/// z0 = (hbar/(2 e^2)) sqrt(2 E_C / E_L).
[[nodiscard]] GyratorCircuit equivalent_circuit(const QuantumGyratorConfig& cfg);

}  // namespace gyrokit
