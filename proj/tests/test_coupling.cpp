#include <doctest.h>

#include <cmath>
#include <vector>

#include "gyrokit/constants.hpp"
#include "gyrokit/coupling.hpp"
#include "gyrokit/errors.hpp"
#include "gyrokit/junction.hpp"

using namespace gyrokit;

namespace {

FennecPoint make_point(double ej_prime, double flux_bias, double ej_second = 0.0,
                       double mean_voltage = 0.0) {
  FennecPoint p;
  p.ej_prime = ej_prime;
  p.ej_second = ej_second;
  p.flux_bias = flux_bias;
  p.mean_voltage = mean_voltage;
  return p;
}

JunctionSpec logistic_spec(double flux_offset) {
  JunctionSpec spec;
  spec.gap = 1.0;
  spec.gap_unit = EnergyUnit::joule;
  spec.external_flux = flux_offset;
  spec.channels.push_back(TransmissionChannel::logistic(0.6, 0.3, 0.12));
  spec.channels.push_back(TransmissionChannel::logistic(0.35, 0.55, 0.2));
  return spec;
}

/// Junction energy as a function of gate voltage and node flux (flux-quantum
/// units), the function whose expansion quadratic_coefficients reports.
double eps_of(const JunctionSpec& base, double v, double phi1) {
  JunctionSpec spec = base;
  spec.bias_voltage = v;
  return abs_energy(spec, phi1);
}

}  // namespace

TEST_CASE("fennec strength: quarter-flux anchor and symmetry") {
  const double ej_prime = 3.2e-24;  // J/V
  const auto p = make_point(ej_prime, 0.25);
  const double expected = (2.0 * kTwoPi / Constants::phi0) * ej_prime;
  CHECK(fennec_strength(p) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(fennec_strength(p) == doctest::Approx(max_fennec_strength(ej_prime)).epsilon(1e-14));
  // Same number via the resistance-quantum form (4 pi / R_Q) (E_J'/2e).
  const double rq_form = (4.0 * kPi / Constants::r_q) * ej_prime / (2.0 * Constants::e);
  CHECK(fennec_strength(p) == doctest::Approx(rq_form).epsilon(1e-14));

  CHECK(fennec_strength(make_point(ej_prime, 0.0)) == doctest::Approx(0.0).scale(expected));
  for (double phi : {0.1, 0.25, 0.4}) {
    CHECK(fennec_strength(make_point(ej_prime, -phi)) ==
          doctest::Approx(-fennec_strength(make_point(ej_prime, phi))).epsilon(1e-14));
    // One flux quantum of bias is a full period.
    CHECK(fennec_strength(make_point(ej_prime, phi + 1.0)) ==
          doctest::Approx(fennec_strength(make_point(ej_prime, phi))).epsilon(1e-12));
  }
}

TEST_CASE("fennec strength: |G| is extremal at quarter-flux bias") {
  const double ej_prime = 1.0e-24;
  double best_phi = 0.0, best = -1.0;
  for (int i = 0; i <= 400; ++i) {
    const double phi = -0.5 + i / 400.0;
    const double g = std::abs(fennec_strength(make_point(ej_prime, phi)));
    if (g > best) {
      best = g;
      best_phi = phi;
    }
  }
  CHECK(std::abs(std::abs(best_phi) - 0.25) <= 1.0 / 400.0 + 1e-12);
  CHECK(best == doctest::Approx(max_fennec_strength(ej_prime)).epsilon(1e-6));
}

TEST_CASE("fennec strength: curvature term shifts the gate point") {
  const auto base = make_point(2.0e-24, 0.25, 5.0e-23);
  auto shifted = base;
  shifted.mean_voltage = 1.5e-3;
  const double expected =
      (2.0 * kTwoPi / Constants::phi0) * (base.ej_prime + base.ej_second * shifted.mean_voltage);
  CHECK(fennec_strength(shifted) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("gyrator conductance: photon-number derating") {
  const double ej_prime = 2.5e-24;
  const double z0 = 50.0;
  const double g_max = max_fennec_strength(ej_prime);

  auto op = GyratorOperatingPoint::antisymmetric(ej_prime, z0);
  CHECK(gyrator_conductance(op).g_minus == doctest::Approx(g_max).epsilon(1e-14));
  CHECK(gyrator_conductance(op).g_plus == doctest::Approx(0.0).scale(g_max));
  CHECK_FALSE(gyrator_conductance(op).out_of_validity);

  // Half the unloaded value at N = R_Q/(pi z0).
  const double n_half = Constants::r_q / (kPi * z0);
  auto half = GyratorOperatingPoint::antisymmetric(ej_prime, z0, n_half, n_half);
  CHECK(gyrator_conductance(half).g_minus == doctest::Approx(0.5 * g_max).epsilon(1e-12));

  // Linear in N with slope -g_max pi z0 / (2 R_Q).
  const double n_probe = 3.0;
  auto probe = GyratorOperatingPoint::antisymmetric(ej_prime, z0, n_probe, n_probe);
  const double slope = (gyrator_conductance(probe).g_minus - g_max) / n_probe;
  CHECK(slope == doctest::Approx(-g_max * kPi * z0 / (2.0 * Constants::r_q)).epsilon(1e-10));

  // Loading past the model zero flags the result but still returns it.
  auto heavy = GyratorOperatingPoint::antisymmetric(ej_prime, z0, 10.0 * n_half, 10.0 * n_half);
  const auto gh = gyrator_conductance(heavy);
  CHECK(gh.out_of_validity);
  CHECK(gh.g_minus < 0.0);

  // Single-expression form agrees with the two-arm assembly.
  CHECK(photon_loaded_conductance(g_max, z0, n_half) ==
        doctest::Approx(gyrator_conductance(half).g_minus).epsilon(1e-13));
}

TEST_CASE("gyrator conductance: asymmetric loading feeds the co-rotating term") {
  auto op = GyratorOperatingPoint::antisymmetric(1.0e-24, 120.0, 2.0, 5.0);
  const auto g = gyrator_conductance(op);
  // g_plus picks up exactly the loading imbalance of the two arms.
  const double k = (kTwoPi / Constants::phi0) * 1.0e-24;
  const double l1 = kPi * 120.0 * 2.0 / (2.0 * Constants::r_q);
  const double l2 = kPi * 120.0 * 5.0 / (2.0 * Constants::r_q);
  CHECK(g.g_plus == doctest::Approx(k * (l2 - l1)).epsilon(1e-12));
  CHECK(g.g_minus == doctest::Approx(k * (2.0 - l1 - l2)).epsilon(1e-12));
}

TEST_CASE("charge noise: closed form and finite-difference oracle") {
  CHECK(charge_noise_dG(make_point(1e-24, 0.2, 0.0), 1e-6) == 0.0);
  CHECK(charge_noise_dG(make_point(1e-24, 0.0, 3e-23), 1e-6) ==
        doctest::Approx(0.0).scale(1e-12));

  const auto p = make_point(2.0e-24, 0.17, 4.0e-23);
  const double dv = 1e-6;
  auto plus = p, minus = p;
  plus.mean_voltage += dv;
  minus.mean_voltage -= dv;
  const double fd = (fennec_strength(plus) - fennec_strength(minus)) / 2.0;
  CHECK(charge_noise_dG(p, dv) == doctest::Approx(fd).epsilon(1e-4));
}

TEST_CASE("flux noise: zeros at quarter flux and finite-difference oracle") {
  const auto quarter = make_point(2.0e-24, 0.25);
  CHECK(flux_noise_dG(quarter, 1e-6) == doctest::Approx(0.0).scale(max_fennec_strength(2e-24)));
  const auto minus_quarter = make_point(2.0e-24, -0.25);
  CHECK(flux_noise_dG(minus_quarter, 1e-6) ==
        doctest::Approx(0.0).scale(max_fennec_strength(2e-24)));
  CHECK(flux_noise_dG(make_point(0.0, 0.1), 1e-6) == 0.0);

  // Signed agreement with the finite difference over the flux bias.
  const auto p = make_point(3.0e-24, 0.11);
  const double dphi = 1e-7;
  auto plus = p, minus = p;
  plus.flux_bias += dphi;
  minus.flux_bias -= dphi;
  const double fd = (fennec_strength(plus) - fennec_strength(minus)) / 2.0;
  CHECK(flux_noise_dG(p, dphi) == doctest::Approx(fd).epsilon(1e-4));
  CHECK(flux_noise_dG(p, dphi) * fd > 0.0);  // the sign itself is load-bearing
}

TEST_CASE("noise sensitivities: linear-prediction residual is second order") {
  const auto p = make_point(3.0e-24, 0.11);
  const auto residual = [&](double dphi) {
    auto moved = p;
    moved.flux_bias += dphi;
    return std::abs(fennec_strength(moved) - fennec_strength(p) - flux_noise_dG(p, dphi));
  };
  const double r1 = residual(2e-3);
  const double r2 = residual(1e-3);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("quadratic coefficients: structural zeros") {
  // Constant transmission: every gate-voltage derivative vanishes.
  JunctionSpec spec;
  spec.gap = 1.0;
  spec.gap_unit = EnergyUnit::joule;
  spec.external_flux = 0.17;
  spec.channels.push_back(TransmissionChannel::constant(0.4));
  const auto set = quadratic_coefficients(spec, 0.0);
  CHECK(set.exact.alpha == 0.0);
  CHECK(set.exact.c == 0.0);
  CHECK(set.exact.g == 0.0);
  CHECK(set.weak.alpha == 0.0);
  CHECK(set.weak.g == 0.0);

  // Quarter-flux bias: the weak-limit inverse inductance carries cos(phase).
  auto quarter = logistic_spec(0.25);
  const auto qset = quadratic_coefficients(quarter, 0.4);
  const double k = kTwoPi / Constants::phi0;
  const double scale = k * k * weak_limit_ej(quarter, 0.4);
  CHECK(std::abs(qset.weak.inv_l) <= 1e-12 * scale);
}

TEST_CASE("quadratic coefficients: finite-difference oracles") {
  const auto spec = logistic_spec(0.15);
  const double v = 0.42;
  const auto set = quadratic_coefficients(spec, v);

  const double hv = 1e-5;
  const double hp = 1e-5;  // flux step, flux-quantum units
  const double inv_phi0 = 1.0 / Constants::phi0;

  const double d_v =
      (eps_of(spec, v + hv, 0.0) - eps_of(spec, v - hv, 0.0)) / (2.0 * hv);
  CHECK(set.exact.alpha == doctest::Approx(-d_v).epsilon(1e-8));

  const double d_p =
      (eps_of(spec, v, hp) - eps_of(spec, v, -hp)) / (2.0 * hp) * inv_phi0;
  CHECK(set.exact.beta == doctest::Approx(-d_p).epsilon(1e-8));

  const double d_vv =
      (eps_of(spec, v + hv, 0.0) - 2.0 * eps_of(spec, v, 0.0) + eps_of(spec, v - hv, 0.0)) /
      (hv * hv);
  CHECK(set.exact.c == doctest::Approx(-d_vv).epsilon(1e-5));

  const double d_pp =
      (eps_of(spec, v, hp) - 2.0 * eps_of(spec, v, 0.0) + eps_of(spec, v, -hp)) / (hp * hp) *
      inv_phi0 * inv_phi0;
  CHECK(set.exact.inv_l == doctest::Approx(d_pp).epsilon(1e-5));

  const double d_vp = (eps_of(spec, v + hv, hp) - eps_of(spec, v + hv, -hp) -
                       eps_of(spec, v - hv, hp) + eps_of(spec, v - hv, -hp)) /
                      (4.0 * hv * hp) * inv_phi0;
  CHECK(set.exact.g == doctest::Approx(-2.0 * d_vp).epsilon(1e-5));
}

TEST_CASE("quadratic coefficients: weak limit converges quadratically in T") {
  const auto diff_norm = [](double t_scale) {
    JunctionSpec spec;
    spec.gap = 1.0;
    spec.gap_unit = EnergyUnit::joule;
    spec.external_flux = 0.15;
    spec.channels.push_back(TransmissionChannel::custom(
        [t_scale](double v) { return t_scale * (0.5 + 0.3 * v); },
        [t_scale](double) { return t_scale * 0.3; }, [](double) { return 0.0; }));
    const auto set = quadratic_coefficients(spec, 0.5);
    return std::abs(set.difference.alpha) + std::abs(set.difference.beta) +
           std::abs(set.difference.c) * 1.0 + std::abs(set.difference.inv_l) / 1e12 +
           std::abs(set.difference.g) / 1e6;
  };
  const double d1 = diff_norm(0.08);
  const double d2 = diff_norm(0.04);
  const double d3 = diff_norm(0.02);
  CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.15));
  CHECK(d2 / d3 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("self-consistent fixed point: contraction and divergence") {
  // Loading model N(G) grows with G; the damped iteration settles on the
  // self-consistent conductance.
  const double g_max = 1.0;
  const double slope = 0.3;
  const auto f = [&](double g) { return g_max * (1.0 - slope * g * g); };
  const auto res = self_consistent_fixed_point(f, g_max);
  CHECK(res.converged);
  CHECK(std::abs(res.value - f(res.value)) <= 1e-9);

  const auto bad = self_consistent_fixed_point([](double x) { return 2.0 * x + 1.0; }, 1.0, 0.5,
                                               1e-12, 50);
  CHECK_FALSE(bad.converged);

  CHECK_THROWS_AS((void)self_consistent_fixed_point(f, 1.0, 0.0), DomainError);
}

TEST_CASE("operating point validation") {
  auto op = GyratorOperatingPoint::antisymmetric(1e-24, 50.0);
  op.z0 = -1.0;
  CHECK_THROWS_AS((void)gyrator_conductance(op), DomainError);
  op.z0 = 50.0;
  op.n1 = -0.5;
  CHECK_THROWS_AS((void)gyrator_conductance(op), DomainError);

  FennecPoint p;
  p.ej_prime = std::nan("");
  CHECK_THROWS_AS((void)fennec_strength(p), DomainError);
}
