#pragma once

namespace gyrokit {

/// Physical constants (2019 SI exact values) used throughout the toolkit.
/// All internal computation is SI; unit conversions happen at the API edges.
struct Constants {
  /// Elementary charge [C] (exact).
  static constexpr double e = 1.602176634e-19;
  /// Planck constant [J*s] (exact).
  static constexpr double h = 6.62607015e-34;
  /// Reduced Planck constant [J*s].
  static constexpr double hbar = h / 6.283185307179586476925286766559;
  /// Magnetic flux quantum h/(2e) [Wb].
  static constexpr double phi0 = h / (2.0 * e);
  /// Resistance quantum phi0/(2e) = h/(2e)^2 [Ohm].
  static constexpr double r_q = phi0 / (2.0 * e);
};

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Energy units accepted at API boundaries.
enum class EnergyUnit {
  joule,   ///< SI joules
  ghz_h,   ///< value is a frequency in GHz; energy = value * 1e9 * h
};

/// Convert an energy expressed in `unit` to joules.
inline constexpr double to_joule(double value, EnergyUnit unit) {
  return unit == EnergyUnit::joule ? value : value * 1e9 * Constants::h;
}

/// Convert an energy in joules to `unit`.
inline constexpr double from_joule(double joules, EnergyUnit unit) {
  return unit == EnergyUnit::joule ? joules : joules / (1e9 * Constants::h);
}

}  // namespace gyrokit
