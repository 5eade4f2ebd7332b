#pragma once

#include <functional>
#include <vector>

#include "gyrokit/junction.hpp"

namespace gyrokit {

/// Operating point of one voltage-tunable junction arm: local slope and
/// curvature of E_J(V), loop flux bias, and the slowly varying means of the
/// opposite-node variables that shift the effective bias. Fluxes are in units
/// of the flux quantum.
struct FennecPoint {
  double ej_prime = 0.0;           ///< dE_J/dV at the gate point [J/V]
  double ej_second = 0.0;          ///< d^2E_J/dV^2 at the gate point [J/V^2]
  double flux_bias = 0.25;         ///< external loop flux, units of the flux quantum
  std::vector<double> mean_flux;   ///< harmonic amplitudes of the mean node flux; [0] is DC
  double mean_voltage = 0.0;       ///< mean voltage of the charge-side node [V]

  /// DC component of the mean node flux (0 when no harmonics are given).
  [[nodiscard]] double mean_flux_dc() const { return mean_flux.empty() ? 0.0 : mean_flux[0]; }

  /// Throws DomainError on non-finite fields.
  void validate() const;
};

/// Two junction arms loaded by a resonator of impedance z0 holding mean
/// photon numbers n1, n2.
struct GyratorOperatingPoint {
  FennecPoint arm1;
  FennecPoint arm2;
  double z0 = 50.0;  ///< load impedance [Ohm]
  double n1 = 0.0;   ///< mean photon number, mode 1
  double n2 = 0.0;   ///< mean photon number, mode 2

  /// Identical arms with opposite flux bias at +/- a quarter flux quantum —
  /// the canonical gyrator bias where the co-rotating term cancels.
  static GyratorOperatingPoint antisymmetric(double ej_prime, double z0, double n1 = 0.0,
                                             double n2 = 0.0);

  /// Throws DomainError unless z0 > 0 and n1, n2 >= 0.
  void validate() const;
};

/// Flux-charge coupling strength of a single arm [S]:
///   G = (4 pi / Phi0) * (ej_prime + ej_second * mean_voltage)
///       * sin(2 pi (flux_bias - <flux DC>)).
/// The curvature term is the first-order shift of the gate point by the mean
/// voltage of the opposite node.
[[nodiscard]] double fennec_strength(const FennecPoint& p);

/// Peak single-arm coupling (4 pi / Phi0) * ej_prime, reached at a quarter
/// flux quantum bias [S].
[[nodiscard]] double max_fennec_strength(double ej_prime);

/// Counter- and co-rotating conductance combinations of a two-arm gyrator.
struct GyratorConductance {
  double g_minus = 0.0;           ///< counter-rotating (gyration) component [S]
  double g_plus = 0.0;            ///< co-rotating component, 0 for antisymmetric bias [S]
  bool out_of_validity = false;   ///< set when photon loading drives g_minus through zero
};

/// Photon-number-loaded conductance of both arm combinations. Each arm is
/// derated by (1 - pi z0 n_arm / (2 R_Q)); for identical antisymmetric arms
/// this reduces to G_max (1 - pi z0 N / (2 R_Q)) with N = (n1 + n2)/2.
[[nodiscard]] GyratorConductance gyrator_conductance(const GyratorOperatingPoint& op);

/// Averaged single-expression form G = g_max (1 - pi z0 n_mean / (2 R_Q)).
/// Sets *out_of_validity when the result is negative (loading beyond the
/// model's regime); the value is still returned.
[[nodiscard]] double photon_loaded_conductance(double g_max, double z0, double n_mean,
                                               bool* out_of_validity = nullptr);

/// First-order coupling shift from a gate-voltage offset dv [S]:
/// the derivative of fennec_strength with respect to the gate point.
[[nodiscard]] double charge_noise_dG(const FennecPoint& p, double dv);

/// First-order coupling shift from a loop-flux offset dphi (units of the
/// flux quantum) [S]: the derivative of fennec_strength with respect to
/// flux_bias. Vanishes at a quarter flux quantum, where |G| is extremal.
[[nodiscard]] double flux_noise_dG(const FennecPoint& p, double dphi);

/// Coefficients of the junction energy expanded to second order in node flux
/// and gate voltage about (phi1 = 0, V): linear charge/flux offsets, shifts
/// of the effective capacitance and inverse inductance, and the flux-charge
/// cross term.
struct QuadraticCoefficients {
  double alpha = 0.0;  ///< charge offset per volt: -d eps/dV [C]
  double beta = 0.0;   ///< flux offset: -d eps/dPhi1 [A]
  double c = 0.0;      ///< capacitance shift: -d^2 eps/dV^2 [F]
  double inv_l = 0.0;  ///< inverse-inductance shift: +d^2 eps/dPhi1^2 [1/H]
  double g = 0.0;      ///< flux-charge coupling: -2 d^2 eps/dV dPhi1 [S]
};

/// Exact multi-channel coefficients, their small-transmission limits, and the
/// difference (exact - weak).
struct QuadraticCoefficientSet {
  QuadraticCoefficients exact;
  QuadraticCoefficients weak;
  QuadraticCoefficients difference;
};

/// Evaluate the expansion coefficients of abs_energy about zero node flux at
/// gate voltage v. Flux derivatives are with respect to SI flux (webers).
/// Throws DomainError when 1 - T_i sin^2(pi phi_ex) <= 0 for some channel.
[[nodiscard]] QuadraticCoefficientSet quadratic_coefficients(const JunctionSpec& spec, double v);

/// Result of the damped self-consistency iteration.
struct FixedPointResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Damped fixed-point iteration x <- (1-damping) x + damping f(x), used to
/// solve the self-consistent loading G = G(N(G)). Returns the last iterate
/// with a convergence flag; |x_{k+1} - x_k| <= tol * max(1, |x|) stops.
[[nodiscard]] FixedPointResult self_consistent_fixed_point(
    const std::function<double(double)>& f, double x0, double damping = 0.5, double tol = 1e-10,
    int max_iter = 200);

}  // namespace gyrokit
