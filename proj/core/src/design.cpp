#include "gyrokit/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gyrokit/constants.hpp"
#include "gyrokit/coupling.hpp"
#include "gyrokit/errors.hpp"
#include "gyrokit/rootfind.hpp"

namespace gyrokit {

namespace {

using Complex = std::complex<double>;

/// Real-valued pieces of the angle parametrization on the real frequency
/// axis: w_tl = 1/zbar_tl (real), w0 = i w0_im = 1/zbar0 (imaginary), and the
/// matching function f = w_tl^2 + w0_im^2 - g^2 whose root is the central
/// frequency. tan(2 theta) = 2 g w_tl / f.
struct AngleParts {
  double w_tl = 0.0;
  double w0_im = 0.0;
  double f = 0.0;
};

AngleParts angle_parts(const GyratorCircuit& c, double omega) {
  const double y0 = omega * c.c0 - 1.0 / (omega * c.l0);
  const double p = 1.0 - omega * c.l_c * y0;
  AngleParts a;
  a.w_tl = (p * p - c.g * c.g * omega * omega * c.l_c * c.l_c) / c.z_tl;
  a.w0_im = y0 - omega * c.l_c * y0 * y0 + omega * c.l_c * c.g * c.g;
  a.f = a.w_tl * a.w_tl + a.w0_im * a.w0_im - c.g * c.g;
  return a;
}

/// d f / d omega, in closed form.
double angle_f_derivative(const GyratorCircuit& c, double omega) {
  const double y0 = omega * c.c0 - 1.0 / (omega * c.l0);
  const double y0d = c.c0 + 1.0 / (omega * omega * c.l0);
  const double p = 1.0 - omega * c.l_c * y0;
  const double pd = -c.l_c * (y0 + omega * y0d);
  const double w_tl = (p * p - c.g * c.g * omega * omega * c.l_c * c.l_c) / c.z_tl;
  const double w_tld = (2.0 * p * pd - 2.0 * c.g * c.g * omega * c.l_c * c.l_c) / c.z_tl;
  const double w0 = y0 - omega * c.l_c * y0 * y0 + omega * c.l_c * c.g * c.g;
  const double w0d = y0d - c.l_c * y0 * y0 - 2.0 * omega * c.l_c * y0 * y0d + c.l_c * c.g * c.g;
  return 2.0 * w_tl * w_tld + 2.0 * w0 * w0d;
}

/// | f | - | 2 g w_tl |: zero where |tan(2 theta)| = 1, negative inside the
/// passband, free of poles.
double edge_function(const GyratorCircuit& c, double omega) {
  const AngleParts a = angle_parts(c, omega);
  return std::abs(a.f) - std::abs(2.0 * c.g * a.w_tl);
}

double deviation_norm(const Eigen::Matrix2cd& d, DeviationNorm norm) {
  return norm == DeviationNorm::max_abs ? d.cwiseAbs().maxCoeff() : d.norm();
}

Eigen::Matrix2cd scattering_at(const GyratorCircuit& c, double omega) {
  return scattering_from_impedance(impedance(c, omega), c.z_tl).m;
}

}  // namespace

double optimal_conductance(const GyratorCircuit& circ) {
  circ.validate();
  const double x = circ.l_c * circ.omega0() / circ.z_tl;
  const double y2 = 2.0 * x * x;
  if (x < 1e-6) {
    return (1.0 - y2 / 2.0) / circ.z_tl;
  }
  // Rationalized form of [sqrt(1 + 2 y^2) - 1] / y^2: free of the subtractive
  // cancellation that would otherwise lose ~y^-2 digits at small y.
  return 2.0 / (circ.z_tl * (std::sqrt(1.0 + 2.0 * y2) + 1.0));
}

double central_frequency(const GyratorCircuit& circ, double rel_tol) {
  circ.validate();
  const double w0 = circ.omega0();
  const auto f = [&](double w) { return angle_parts(circ, w).f; };
  const auto fd = [&](double w) { return angle_f_derivative(circ, w); };

  // Candidates are genuine sign-change roots of the matching function plus
  // stationary points where it only grazes zero. The matched conductance is
  // itself an approximation, so near the resonance the matching condition can
  // present a shallow tangency instead of a crossing; a distant spurious
  // crossing must not win over that tangency. Keep the candidate closest to
  // the bare resonance.
  const int n_scan = 2000;
  double best = 0.0;
  double best_dist = std::numeric_limits<double>::infinity();
  const auto consider = [&](double w) {
    const double dist = std::abs(w - w0);
    if (dist < best_dist) {
      best_dist = dist;
      best = w;
    }
  };

  double prev_w = 0.5 * w0, prev_f = f(prev_w), prev_fd = fd(prev_w);
  for (int i = 1; i <= n_scan; ++i) {
    const double w = (0.5 + i / static_cast<double>(n_scan)) * w0;
    const double fw = f(w);
    const double fdw = fd(w);
    if (prev_f == 0.0) {
      consider(prev_w);
    } else if (prev_f * fw < 0.0) {
      consider(brent_root(f, prev_w, w, rel_tol * w0, rel_tol, 300).x);
    }
    if (prev_fd * fdw < 0.0) {
      const double w_star = brent_root(fd, prev_w, w, rel_tol * w0, rel_tol, 300).x;
      const AngleParts a = angle_parts(circ, w_star);
      const double scale = a.w_tl * a.w_tl + a.w0_im * a.w0_im + circ.g * circ.g;
      if (std::abs(a.f) <= 0.05 * scale) consider(w_star);
    }
    prev_w = w;
    prev_f = fw;
    prev_fd = fdw;
  }
  if (!(best_dist < std::numeric_limits<double>::infinity())) {
    throw NumericsError("design: no matching frequency found in [0.5, 1.5] resonance band");
  }
  return best;
}

BandwidthResult bandwidth(const GyratorCircuit& circ) {
  circ.validate();
  const double w0 = circ.omega0();
  // March outward from the bare resonance so the edges always bracket it,
  // even when the matching condition has extra structure further out.
  const auto h = [&](double w) { return edge_function(circ, w); };
  if (!(h(w0) < 0.0)) {
    throw NumericsError("design: no passband at the resonance frequency (|tan 2 theta| <= 1)");
  }

  const auto solve_edge = [&](int direction) {
    double lo = 0.0, hi = 0.0;
    bracket_outward(h, w0, direction, 1.002, 1.02, direction > 0 ? 1e3 * w0 : 1e-3 * w0, lo, hi);
    return brent_root(h, lo, hi, 1e-12 * w0, 1e-13, 300).x;
  };

  BandwidthResult r;
  r.omega_plus = solve_edge(+1);
  r.omega_minus = solve_edge(-1);
  r.delta = r.omega_plus - r.omega_minus;

  const auto residual = [&](double w) {
    const AngleParts a = angle_parts(circ, w);
    return std::abs(std::abs(2.0 * circ.g * a.w_tl / a.f) - 1.0);
  };
  r.residual_minus = residual(r.omega_minus);
  r.residual_plus = residual(r.omega_plus);
  if (!(r.residual_minus <= 1e-8 && r.residual_plus <= 1e-8)) {
    throw NumericsError("design: passband edge residual exceeds tolerance");
  }

  r.estimate_large_lc = circ.l_c > 0.0
                            ? circ.z0() * circ.z_tl / (circ.l_c * circ.l_c * w0)
                            : std::numeric_limits<double>::infinity();
  r.beta_lc0 =
      (circ.g * circ.g * circ.z_tl * circ.z_tl + 2.0 * std::abs(circ.g) * circ.z_tl - 1.0) / 4.0;
  const double arg = 1.0 + r.beta_lc0 * (circ.z0() / circ.z_tl) * (circ.z0() / circ.z_tl);
  r.estimate_lc0 = arg > 0.0 ? 2.0 * w0 * std::sqrt(arg) : 0.0;
  return r;
}

CompressionCurve compression_curve(const GyratorCircuit& circ, const std::vector<double>& n_grid,
                                   double threshold_db) {
  circ.validate();
  if (!(threshold_db > 0.0)) throw DomainError("design: threshold must be > 0 dB");
  if (n_grid.size() < 2 || n_grid.front() != 0.0) {
    throw DomainError("design: photon grid must start at 0 with at least 2 points");
  }
  for (std::size_t i = 0; i + 1 < n_grid.size(); ++i) {
    if (!(n_grid[i] < n_grid[i + 1])) {
      throw DomainError("design: photon grid must be strictly increasing");
    }
  }
  const double g_opt = optimal_conductance(circ);
  if (!(std::abs(circ.g - g_opt) <= 1e-6 * std::abs(g_opt))) {
    throw DomainError("design: conductance must be matched at zero power");
  }

  const double w0 = circ.omega0();
  const double z0 = circ.z0();
  CompressionCurve curve;
  curve.n = n_grid;
  curve.s12_abs.reserve(n_grid.size());
  GyratorCircuit loaded = circ;
  for (double n : n_grid) {
    loaded.g = photon_loaded_conductance(circ.g, z0, n);
    curve.s12_abs.push_back(std::abs(scattering_at(loaded, w0)(0, 1)));
  }
  curve.s12_at_zero = curve.s12_abs.front();

  const double target = curve.s12_at_zero * std::pow(10.0, -threshold_db / 10.0);
  curve.n_threshold = -1.0;
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (curve.s12_abs[i] <= target) {
      const double sa = curve.s12_abs[i - 1];
      const double sb = curve.s12_abs[i];
      if (n_grid[i - 1] > 0.0) {
        const double la = std::log10(n_grid[i - 1]);
        const double lb = std::log10(n_grid[i]);
        const double l = la + (sa - target) * (lb - la) / (sa - sb);
        curve.n_threshold = std::pow(10.0, l);
      } else {
        curve.n_threshold =
            n_grid[i - 1] + (sa - target) * (n_grid[i] - n_grid[i - 1]) / (sa - sb);
      }
      return curve;
    }
  }
  throw NumericsError("design: photon grid does not cross the compression threshold");
}

DisorderDeviation disorder_first_order(const GyratorCircuit& circ, double omega,
                                       bool* large_disorder) {
  circ.validate();
  if (!(omega > 0.0)) throw DomainError("design: frequency must be > 0");

  GyratorCircuit nominal = circ;
  nominal.disorder = CircuitDisorder{};
  const Eigen::Matrix2cd s0 = scattering_at(nominal, omega);

  const auto& d = circ.disorder;
  if (large_disorder != nullptr) {
    const double lc_ref = circ.l_c > 0.0 ? circ.l_c : circ.l0;
    *large_disorder = std::abs(d.dl_c) > 0.1 * lc_ref || std::abs(d.dc0) > 0.1 * circ.c0 ||
                      std::abs(d.dl0) > 0.1 * circ.l0 || std::abs(d.c12) > 0.1 * circ.c0 ||
                      std::abs(d.l12) > 0.1 * circ.l0;
  }

  const Complex y0(0.0, omega * circ.c0 - 1.0 / (omega * circ.l0));
  const Complex denom = y0 * y0 + circ.g * circ.g;
  const Complex a(0.0, omega * d.dc0 + d.dl0 / (omega * circ.l0 * circ.l0));
  const Complex b(0.0, omega * d.c12 + d.l12 / (omega * circ.l0 * circ.l0));
  DisorderDeviation dev;
  dev.dz_sigma_z = Complex(0.0, omega * d.dl_c) - a / denom;
  dev.dz_sigma_x = b / denom;

  Eigen::Matrix2cd dz;
  dz << dev.dz_sigma_z, dev.dz_sigma_x, dev.dz_sigma_x, -dev.dz_sigma_z;
  const Eigen::Matrix2cd one_minus_s = Eigen::Matrix2cd::Identity() - s0;
  dev.ds = -(one_minus_s * dz * one_minus_s) / (2.0 * circ.z_tl);
  dev.exact = scattering_at(circ, omega) - s0;
  return dev;
}

double disorder_tolerance(const GyratorCircuit& circ, DisorderParam which, double budget,
                          DeviationNorm norm) {
  circ.validate();
  if (!(budget > 0.0 && budget <= 0.2)) {
    throw DomainError("design: error budget must lie in (0, 0.2]");
  }

  GyratorCircuit base = circ;
  base.disorder = CircuitDisorder{};
  base.g = optimal_conductance(circ);
  const double omega = circ.omega0();
  const Eigen::Matrix2cd s0 = scattering_at(base, omega);

  const auto deviation = [&](double m) {
    GyratorCircuit pert = base;
    switch (which) {
      case DisorderParam::dl_c: pert.disorder.dl_c = m; break;
      case DisorderParam::dc0: pert.disorder.dc0 = m; break;
      case DisorderParam::dl0: pert.disorder.dl0 = m; break;
      case DisorderParam::c12: pert.disorder.c12 = m; break;
      case DisorderParam::l12: pert.disorder.l12 = m; break;
    }
    return deviation_norm(scattering_at(pert, omega) - s0, norm) - budget;
  };

  double scale = 0.0;
  switch (which) {
    case DisorderParam::dl_c: scale = circ.l_c > 0.0 ? circ.l_c : circ.l0; break;
    case DisorderParam::dc0:
    case DisorderParam::c12: scale = circ.c0; break;
    case DisorderParam::dl0:
    case DisorderParam::l12: scale = circ.l0; break;
  }

  double lo = 0.0, lo_dev = -budget;
  double m = 1e-6 * scale;
  while (true) {
    const double d = deviation(m);
    if (d >= 0.0) {
      return brent_root(deviation, lo, m, 1e-12 * scale, 1e-10, 300).x;
    }
    if (d < lo_dev - 1e-12) {
      std::ostringstream msg;
      msg << "design: deviation not monotone while expanding bracket [" << lo << ", " << m << "]";
      throw NumericsError(msg.str());
    }
    lo = m;
    lo_dev = d;
    m *= 2.0;
    if (m > 1e6 * scale) {
      throw NumericsError("design: error budget not reached within the search range");
    }
  }
}

MixingResult mixing_matrices(const GyratorCircuit& circ, Complex a1, Complex a2, double chi) {
  circ.validate();
  if (circ.disorder.any()) {
    throw DomainError("design: mixing analysis requires a disorder-free circuit");
  }
  if (!(chi > 0.0)) throw DomainError("design: chi must be > 0");

  const double w0 = circ.omega0();
  const Complex i_w0(0.0, w0);
  const Complex y0 = i_w0 * circ.c0 + 1.0 / (i_w0 * circ.l0);

  // Inner (load) impedance including the gyration term, and the node
  // response W = (Z/z_tl - 1)^-1 (Z_load / z_tl) mapping incoming amplitudes
  // to node fields at +omega0.
  Eigen::Matrix2cd inner;
  inner << y0, Complex(circ.g), Complex(-circ.g), y0;
  const Complex det_inner = inner(0, 0) * inner(1, 1) - inner(0, 1) * inner(1, 0);
  if (std::abs(det_inner) == 0.0) {
    throw NumericsError("design: load response singular at resonance");
  }
  Eigen::Matrix2cd z_load;
  z_load << inner(1, 1), -inner(0, 1), -inner(1, 0), inner(0, 0);
  z_load /= det_inner;

  const Eigen::Matrix2cd z = (i_w0 * circ.l_c * Eigen::Matrix2cd::Identity() + z_load) / circ.z_tl;
  const Eigen::Matrix2cd zm1 = z - Eigen::Matrix2cd::Identity();
  const Complex det_zm1 = zm1(0, 0) * zm1(1, 1) - zm1(0, 1) * zm1(1, 0);
  if (std::abs(det_zm1) == 0.0) throw NumericsError("design: scattering response singular");
  Eigen::Matrix2cd zm1_inv;
  zm1_inv << zm1(1, 1), -zm1(0, 1), -zm1(1, 0), zm1(0, 0);
  zm1_inv /= det_zm1;

  MixingResult res;
  res.w_response = zm1_inv * (z_load / circ.z_tl);
  const Eigen::Vector2cd u = res.w_response * Eigen::Vector2cd(a1, a2);
  res.u1 = u(0);
  res.u2 = u(1);

  res.dg_dc = -(circ.g / 4.0) * chi * (std::norm(u(0)) + std::norm(u(1)));
  res.dg_plus = -(circ.g / 8.0) * chi * (u(0) * u(0) + u(1) * u(1));
  res.dg_minus = std::conj(res.dg_plus);

  const Eigen::Matrix2cd w_neg = res.w_response.conjugate();  // response at -omega0
  Eigen::Matrix2cd two_i_sy;
  two_i_sy << Complex(0.0), Complex(2.0), Complex(-2.0), Complex(0.0);

  const auto block = [&](double target, double source, Complex dg,
                         const Eigen::Matrix2cd& w_src) {
    MixingBlock b;
    b.omega_target = target;
    b.omega_source = source;
    b.m = (source / target) * circ.z_tl * dg * (w_src * two_i_sy * w_src);
    return b;
  };

  res.blocks.push_back(block(-3.0 * w0, -w0, res.dg_minus, w_neg));
  res.blocks.push_back(block(-w0, -w0, res.dg_dc, w_neg));
  res.blocks.push_back(block(-w0, w0, res.dg_minus, res.w_response));
  res.blocks.push_back(block(w0, -w0, res.dg_plus, w_neg));
  res.blocks.push_back(block(w0, w0, res.dg_dc, res.w_response));
  res.blocks.push_back(block(3.0 * w0, w0, res.dg_plus, res.w_response));

  // Rectangular map {-3w0, -w0, +w0, +3w0} <- {-w0, +w0}: unperturbed
  // scattering on the fundamental diagonal, conversion blocks elsewhere. The
  // first-order DC blocks are reported separately in `blocks`.
  const Eigen::Matrix2cd s_pos = scattering_at(circ, w0);
  const Eigen::Matrix2cd s_neg = s_pos.conjugate();
  res.rectangular = Eigen::MatrixXcd::Zero(8, 4);
  res.rectangular.block<2, 2>(0, 0) = res.blocks[0].m;  // -3w0 <- -w0
  res.rectangular.block<2, 2>(2, 0) = s_neg;            // -w0 <- -w0
  res.rectangular.block<2, 2>(2, 2) = res.blocks[2].m;  // -w0 <- +w0
  res.rectangular.block<2, 2>(4, 0) = res.blocks[3].m;  // +w0 <- -w0
  res.rectangular.block<2, 2>(4, 2) = s_pos;            // +w0 <- +w0
  res.rectangular.block<2, 2>(6, 2) = res.blocks[5].m;  // +3w0 <- +w0
  return res;
}

}  // namespace gyrokit
