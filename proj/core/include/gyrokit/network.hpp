#pragma once

#include <Eigen/Dense>
#include <complex>

namespace gyrokit {

/// Deviations of the gyrator circuit elements from their nominal symmetric
/// values: antisymmetric splittings (dl_c, dc0, dl0) and the parasitic
/// cross couplings (c12, l12). All SI; zero means an ideal circuit.
struct CircuitDisorder {
  double dl_c = 0.0;  ///< coupling-inductance splitting [H]
  double dc0 = 0.0;   ///< load-capacitance splitting [F]
  double dl0 = 0.0;   ///< load-inductance splitting [H]
  double c12 = 0.0;   ///< parasitic cross capacitance [F]
  double l12 = 0.0;   ///< parasitic cross inductance [H]

  [[nodiscard]] bool any() const {
    return dl_c != 0.0 || dc0 != 0.0 || dl0 != 0.0 || c12 != 0.0 || l12 != 0.0;
  }
};

/// Two-port gyrator: each port sees a series coupling inductance l_c into a
/// parallel l0 || c0 load, and the two nodes are joined by a gyration
/// conductance g. Ports terminate in transmission lines of impedance z_tl.
struct GyratorCircuit {
  double l0 = 0.0;    ///< load inductance [H]
  double c0 = 0.0;    ///< load capacitance [F]
  double l_c = 0.0;   ///< series coupling inductance [H]
  double z_tl = 0.0;  ///< transmission-line impedance [Ohm]
  double g = 0.0;     ///< gyration conductance [S]
  CircuitDisorder disorder;

  /// Load resonance frequency 1/sqrt(l0 c0) [rad/s].
  [[nodiscard]] double omega0() const;
  /// Load characteristic impedance sqrt(l0/c0) [Ohm].
  [[nodiscard]] double z0() const;

  /// Build from the dimensionless parameter set (l_c' = l_c omega0 / z_tl,
  /// z0' = z0 / z_tl, g' = g z_tl), fixing omega0 = 1 rad/s and z_tl = 1 Ohm.
  /// All results expressed in these units carry over to any SI realization.
  static GyratorCircuit normalized(double l_c_norm, double z0_norm, double g_norm,
                                   CircuitDisorder disorder_norm = {});

  /// Throws DomainError unless l0, c0, z_tl > 0, l_c >= 0 and all disorder
  /// fields are finite.
  void validate() const;
};

/// A 2x2 complex frequency-domain port matrix.
struct ComplexTwoPort {
  enum class Kind { impedance, scattering };
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  double omega = 0.0;  ///< evaluation frequency [rad/s]
  Kind kind = Kind::impedance;
};

/// Closed-form angle parametrization of the zero-disorder scattering matrix
/// S = exp(i phi) [cos(2 theta) 1 + i sin(2 theta) sigma_y]; the global
/// reflection phase phi is carried by the returned matrix, not by the angle.
struct PauliAngle {
  double tan2theta = 0.0;
  double cos2theta = 1.0;
  double sin2theta = 0.0;
  std::complex<double> zbar_tl;  ///< renormalized line impedance [Ohm] (real on the real axis)
  std::complex<double> zbar0;    ///< renormalized load impedance [Ohm]
};

/// Port impedance matrix Z(omega) = i omega Lc + [i omega C + (i omega L)^-1
/// + i G sigma_y]^-1 with the disorder-split element matrices. Throws
/// NumericsError when the inner admittance matrix is singular (this happens
/// for g = 0 exactly at the load resonance with no disorder).
[[nodiscard]] ComplexTwoPort impedance(const GyratorCircuit& circ, double omega);

/// Scattering from a port impedance: S = (Z/z_tl - 1)^-1 (Z/z_tl + 1).
/// Throws NumericsError when Z/z_tl - 1 is singular.
[[nodiscard]] ComplexTwoPort scattering_from_impedance(const ComplexTwoPort& z, double z_tl);

/// Closed-form scattering of the zero-disorder circuit via the angle
/// parametrization, built from the two sigma_y eigen-reflections so it
/// reproduces the direct computation entrywise, including the overall
/// reflection phase. Throws DomainError when the circuit carries disorder.
[[nodiscard]] std::pair<PauliAngle, ComplexTwoPort> pauli_form(const GyratorCircuit& circ,
                                                               double omega);

/// Three-port circulator scattering matrix: three lines of impedance z_tl
/// joined through resistance-r branches around a gyration loop, with each
/// node loaded by a resonator of characteristic impedance z0 resonant at
/// omega_r. Evaluated through the inverse load impedance, so the response is
/// finite at omega = omega_r. Throws NumericsError when the common
/// denominator vanishes.
[[nodiscard]] Eigen::Matrix3cd circulator_scattering(double z_tl, double r, double z0,
                                                     double omega_r, double omega);

}  // namespace gyrokit
