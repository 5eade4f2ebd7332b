#include "gyrokit/coupling.hpp"

#include <cmath>

#include "gyrokit/errors.hpp"

namespace gyrokit {

namespace {

bool all_finite(const FennecPoint& p) {
  if (!std::isfinite(p.ej_prime) || !std::isfinite(p.ej_second) ||
      !std::isfinite(p.flux_bias) || !std::isfinite(p.mean_voltage)) {
    return false;
  }
  for (double a : p.mean_flux) {
    if (!std::isfinite(a)) return false;
  }
  return true;
}

/// Effective gate slope including the mean-voltage shift of the gate point.
double effective_slope(const FennecPoint& p) {
  return p.ej_prime + p.ej_second * p.mean_voltage;
}

/// Single-arm counter-rotating contribution with photon-number derating.
double arm_contribution(const FennecPoint& p, double z0, double n) {
  const double derate = 1.0 - kPi * z0 * n / (2.0 * Constants::r_q);
  return (kTwoPi / Constants::phi0) * effective_slope(p) *
         std::sin(kTwoPi * (p.flux_bias - p.mean_flux_dc())) * derate;
}

}  // namespace

void FennecPoint::validate() const {
  if (!all_finite(*this)) throw DomainError("coupling: non-finite operating-point field");
}

GyratorOperatingPoint GyratorOperatingPoint::antisymmetric(double ej_prime, double z0, double n1,
                                                           double n2) {
  GyratorOperatingPoint op;
  op.arm1.ej_prime = ej_prime;
  op.arm1.flux_bias = 0.25;
  op.arm2.ej_prime = ej_prime;
  op.arm2.flux_bias = -0.25;
  op.z0 = z0;
  op.n1 = n1;
  op.n2 = n2;
  return op;
}

void GyratorOperatingPoint::validate() const {
  arm1.validate();
  arm2.validate();
  if (!(z0 > 0.0)) throw DomainError("coupling: load impedance must be > 0");
  if (!(n1 >= 0.0 && n2 >= 0.0)) throw DomainError("coupling: photon numbers must be >= 0");
}

double fennec_strength(const FennecPoint& p) {
  p.validate();
  return (2.0 * kTwoPi / Constants::phi0) * effective_slope(p) *
         std::sin(kTwoPi * (p.flux_bias - p.mean_flux_dc()));
}

double max_fennec_strength(double ej_prime) {
  return (2.0 * kTwoPi / Constants::phi0) * ej_prime;
}

GyratorConductance gyrator_conductance(const GyratorOperatingPoint& op) {
  op.validate();
  const double a1 = arm_contribution(op.arm1, op.z0, op.n1);
  const double a2 = arm_contribution(op.arm2, op.z0, op.n2);
  GyratorConductance g;
  g.g_minus = a1 - a2;
  g.g_plus = a1 + a2;
  // Compare against the unloaded value: a sign flip means the linear
  // photon-number derating has been pushed past its zero.
  GyratorOperatingPoint unloaded = op;
  unloaded.n1 = 0.0;
  unloaded.n2 = 0.0;
  const double g0 = arm_contribution(unloaded.arm1, op.z0, 0.0) -
                    arm_contribution(unloaded.arm2, op.z0, 0.0);
  g.out_of_validity = (g0 != 0.0) && (g.g_minus * g0 < 0.0);
  return g;
}

double photon_loaded_conductance(double g_max, double z0, double n_mean, bool* out_of_validity) {
  if (!(z0 > 0.0)) throw DomainError("coupling: load impedance must be > 0");
  if (!(n_mean >= 0.0)) throw DomainError("coupling: photon number must be >= 0");
  const double g = g_max * (1.0 - kPi * z0 * n_mean / (2.0 * Constants::r_q));
  if (out_of_validity != nullptr) *out_of_validity = (g * g_max < 0.0);
  return g;
}

double charge_noise_dG(const FennecPoint& p, double dv) {
  p.validate();
  return (2.0 * kTwoPi / Constants::phi0) * p.ej_second *
         std::sin(kTwoPi * (p.flux_bias - p.mean_flux_dc())) * dv;
}

double flux_noise_dG(const FennecPoint& p, double dphi) {
  p.validate();
  return (2.0 * kTwoPi / Constants::phi0) * effective_slope(p) * kTwoPi *
         std::cos(kTwoPi * (p.flux_bias - p.mean_flux_dc())) * dphi;
}

QuadraticCoefficientSet quadratic_coefficients(const JunctionSpec& spec, double v) {
  spec.validate();
  const double gap = spec.gap_joule();
  const double phase = kTwoPi * spec.external_flux;  // loop phase in radians
  const double half = 0.5 * phase;
  const double s = std::sin(half) * std::sin(half);  // sin^2 of the half phase
  const double sin_p = std::sin(phase);
  const double cos_p = std::cos(phase);
  const double k = kTwoPi / Constants::phi0;  // flux-to-phase conversion [1/Wb]

  QuadraticCoefficientSet out;
  double ej = 0.0, ej1 = 0.0, ej2 = 0.0;
  for (const auto& ch : spec.channels) {
    const double t = ch.value(v);
    const double t1 = ch.derivative(v, 1);
    const double t2 = ch.derivative(v, 2);
    const double u = 1.0 - t * s;
    if (!(u > 0.0)) throw DomainError("coupling: transmission saturates the loop phase");
    const double ru = std::sqrt(u);

    out.exact.alpha += -gap * t1 * s / (2.0 * ru);
    out.exact.beta += k * gap * t * sin_p / (4.0 * ru);
    out.exact.c += -(gap * s / 2.0) * (t2 + t1 * t1 * s / (2.0 * u)) / ru;
    out.exact.inv_l += k * k * (gap * t / 4.0) * (cos_p + t * s * s) / (u * ru);
    out.exact.g += 2.0 * k * (gap / 4.0) * t1 * sin_p * (1.0 - t * s / 2.0) / (u * ru);

    ej += gap * t / 4.0;
    ej1 += gap * t1 / 4.0;
    ej2 += gap * t2 / 4.0;
  }

  out.weak.alpha = -ej1 * (1.0 - cos_p);
  out.weak.beta = k * ej * sin_p;
  out.weak.c = -ej2 * (1.0 - cos_p);
  out.weak.inv_l = k * k * ej * cos_p;
  out.weak.g = 2.0 * k * ej1 * sin_p;

  out.difference.alpha = out.exact.alpha - out.weak.alpha;
  out.difference.beta = out.exact.beta - out.weak.beta;
  out.difference.c = out.exact.c - out.weak.c;
  out.difference.inv_l = out.exact.inv_l - out.weak.inv_l;
  out.difference.g = out.exact.g - out.weak.g;
  return out;
}

FixedPointResult self_consistent_fixed_point(const std::function<double(double)>& f, double x0,
                                             double damping, double tol, int max_iter) {
  if (!(damping > 0.0 && damping <= 1.0)) {
    throw DomainError("coupling: damping must lie in (0, 1]");
  }
  FixedPointResult res;
  double x = x0;
  for (int k = 0; k < max_iter; ++k) {
    const double next = (1.0 - damping) * x + damping * f(x);
    res.iterations = k + 1;
    if (std::abs(next - x) <= tol * std::max(1.0, std::abs(next))) {
      res.value = next;
      res.converged = true;
      return res;
    }
    x = next;
  }
  res.value = x;
  res.converged = false;
  return res;
}

}  // namespace gyrokit
