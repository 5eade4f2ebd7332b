#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "gyrokit/constants.hpp"
#include "gyrokit/spline.hpp"

namespace gyrokit {

/// A voltage-tunable transmission probability T(V) in [0, 1] with analytic
/// derivatives up to fourth order. The built-in families are `constant` and
/// `logistic`; arbitrary models can be wrapped with `custom`.
class TransmissionChannel {
 public:
  /// Voltage-independent transmission (all derivatives vanish).
  static TransmissionChannel constant(double t);

  /// Logistic pinch-off model T(V) = t_max / (1 + exp(-(V - v_th)/v_w)).
  /// Requires 0 < t_max <= 1 and v_w > 0.
  static TransmissionChannel logistic(double t_max, double v_th, double v_w);

  /// Wrap user-supplied value and derivative closures. Any derivative closure
  /// may be empty, in which case requesting that order throws DomainError.
  static TransmissionChannel custom(std::function<double(double)> value,
                                    std::function<double(double)> d1 = {},
                                    std::function<double(double)> d2 = {},
                                    std::function<double(double)> d3 = {},
                                    std::function<double(double)> d4 = {});

  /// T(V); validated to lie in [0, 1].
  [[nodiscard]] double value(double v) const;

  /// d^n T / dV^n for order 0..4.
  [[nodiscard]] double derivative(double v, int order) const;

 private:
  TransmissionChannel() = default;
  std::function<double(double)> f_[5];
};

/// Static description of a multi-channel weak-link junction: superconducting
/// gap, per-channel transmissions evaluated at a bias voltage, and the flux
/// offset of the potential minimum. Fluxes are expressed in units of the flux
/// quantum throughout.
struct JunctionSpec {
  double gap = 1.0;                           ///< gap magnitude in `gap_unit`
  EnergyUnit gap_unit = EnergyUnit::ghz_h;    ///< unit of `gap`
  std::vector<TransmissionChannel> channels;  ///< one entry per conduction channel
  double external_flux = 0.0;                 ///< flux offset, units of the flux quantum
  double bias_voltage = 0.0;                  ///< gate voltage at which T_i are evaluated [V]

  /// Gap converted to joules.
  [[nodiscard]] double gap_joule() const { return to_joule(gap, gap_unit); }

  /// Throws DomainError unless gap > 0 and at least one channel is present.
  void validate() const;
};

/// Ground-state junction energy -gap * sum_i sqrt(1 - T_i sin^2(pi (phi1 - phi_ex)))
/// in joules, with `phi1` in units of the flux quantum. Transmissions are
/// evaluated at spec.bias_voltage.
[[nodiscard]] double abs_energy(const JunctionSpec& spec, double phi1);

/// Small-transmission Josephson energy E_J = gap * sum_i T_i(V) / 4 in joules.
/// If any channel transmission exceeds `warn_threshold` the optional flag
/// `clipped` is set (the value is still returned).
[[nodiscard]] double weak_limit_ej(const JunctionSpec& spec, double v,
                                   double warn_threshold = 0.1, bool* clipped = nullptr);

/// Single-channel junction energy near unit transmission,
///   -gap |cos(pi phi1)| + (gap/2)(T - 1) sin^2(pi phi1) |sec(pi phi1)|,
/// in the units of `gap_joule`. The secant magnitude is clamped below by
/// 1/sec_floor to keep the expression finite at half-integer flux.
[[nodiscard]] double large_transmission_energy(double gap_joule, double t, double phi1,
                                               double sec_floor = 1e-9);

/// Invert the transmon-style spectroscopy relation f_q = (sqrt(8 E_J E_C) - E_C)/h:
/// returns E_J = (h f_q + E_C)^2 / (8 E_C) in joules. f_q in Hz, e_c in joules.
[[nodiscard]] double gatemon_invert(double f_q_hz, double e_c_joule);

/// Smoothed Josephson energy E_J(V) built from tabulated gate-voltage data.
/// Data may be direct energies or qubit frequencies to invert point-wise.
class TabulatedEnergy {
 public:
  enum class Kind {
    direct_ej,     ///< samples are E_J values in `unit`
    gatemon_freq,  ///< samples are qubit frequencies in Hz; inverted with e_c
  };

  /// Build the fit. `voltage` strictly increasing with >= 4 samples.
  /// For Kind::gatemon_freq, `e_c_joule` must be > 0 and `unit` is ignored.
  /// `smoothing` >= 0 is the curvature penalty (0 interpolates).
  TabulatedEnergy(std::vector<double> voltage, std::vector<double> samples, Kind kind,
                  EnergyUnit unit = EnergyUnit::ghz_h, double e_c_joule = 0.0,
                  double smoothing = 0.0);

  /// E_J at gate voltage v, joules. v must lie inside the tabulated hull.
  [[nodiscard]] double ej(double v) const;

  /// d^n E_J / dV^n for order 1..3, joules/volt^n. v must lie strictly
  /// inside the tabulated hull.
  [[nodiscard]] double derivative(double v, int order) const;

  [[nodiscard]] double v_min() const { return spline_.x_min(); }
  [[nodiscard]] double v_max() const { return spline_.x_max(); }
  [[nodiscard]] const SmoothingSpline& spline() const { return spline_; }

 private:
  SmoothingSpline spline_;
};

/// Voltage-derivative of a tabulated Josephson energy (order 1..3).
[[nodiscard]] double ej_derivative(const TabulatedEnergy& tab, double v, int order);

/// Discrete spectrum of a junction energy trace under sinusoidal gate drive.
struct SpectralProbeResult {
  std::vector<double> omega;      ///< angular frequency grid [rad/s], DC..Nyquist
  std::vector<double> magnitude;  ///< single-sided amplitude per bin (same unit as input energy)
  std::size_t drive_bin = 0;      ///< index of the bin at the drive frequency
  [[nodiscard]] double drive_amplitude() const { return magnitude[drive_bin]; }
};

/// Drive the gate as V(t) = v0 + amp sin(omega_ac t), sample the junction
/// energy over `n_periods` full periods at `samples_per_period` points each,
/// and return the single-sided DFT amplitudes. The grid contains an exact bin
/// at omega_ac. The window [v0 - amp, v0 + amp] must lie inside the data hull.
[[nodiscard]] SpectralProbeResult spectral_probe(const TabulatedEnergy& tab, double v0,
                                                 double amp, double omega_ac, double phi1 = 0.0,
                                                 std::size_t n_periods = 64,
                                                 std::size_t samples_per_period = 64);

/// Same probe applied to a closed-form junction: the energy trace is
/// abs_energy(spec, phi1) with the bias voltage swept sinusoidally.
[[nodiscard]] SpectralProbeResult spectral_probe(const JunctionSpec& spec, double v0, double amp,
                                                 double omega_ac, double phi1 = 0.0,
                                                 std::size_t n_periods = 64,
                                                 std::size_t samples_per_period = 64);

}  // namespace gyrokit
