#include "gyrokit/network.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "gyrokit/constants.hpp"
#include "gyrokit/errors.hpp"

namespace gyrokit {

namespace {

using Complex = std::complex<double>;

/// Closed-form 2x2 inverse with an explicit determinant check against the
/// squared largest entry.
Eigen::Matrix2cd invert2(const Eigen::Matrix2cd& m, const char* context) {
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const double scale = m.cwiseAbs().maxCoeff();
  if (!(std::abs(det) > 1e-14 * scale * scale)) {
    throw NumericsError(std::string(context) + ": singular 2x2 matrix");
  }
  Eigen::Matrix2cd inv;
  inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return inv / det;
}

void require_finite(const Eigen::Matrix2cd& m, const char* context) {
  if (!m.allFinite()) throw NumericsError(std::string(context) + ": non-finite matrix entry");
}

}  // namespace

double GyratorCircuit::omega0() const { return 1.0 / std::sqrt(l0 * c0); }

double GyratorCircuit::z0() const { return std::sqrt(l0 / c0); }

GyratorCircuit GyratorCircuit::normalized(double l_c_norm, double z0_norm, double g_norm,
                                          CircuitDisorder disorder_norm) {
  GyratorCircuit c;
  c.z_tl = 1.0;       // Ohm
  c.l0 = z0_norm;     // omega0 = 1 rad/s => l0 = z0, c0 = 1/z0
  c.c0 = 1.0 / z0_norm;
  c.l_c = l_c_norm;
  c.g = g_norm;
  c.disorder = disorder_norm;
  c.validate();
  return c;
}

void GyratorCircuit::validate() const {
  if (!(l0 > 0.0 && c0 > 0.0 && z_tl > 0.0)) {
    throw DomainError("network: l0, c0 and z_tl must be > 0");
  }
  if (!(l_c >= 0.0)) throw DomainError("network: coupling inductance must be >= 0");
  if (!std::isfinite(g)) throw DomainError("network: conductance must be finite");
  if (!(std::isfinite(disorder.dl_c) && std::isfinite(disorder.dc0) &&
        std::isfinite(disorder.dl0) && std::isfinite(disorder.c12) &&
        std::isfinite(disorder.l12))) {
    throw DomainError("network: disorder fields must be finite");
  }
}

ComplexTwoPort impedance(const GyratorCircuit& circ, double omega) {
  circ.validate();
  if (!(omega > 0.0)) throw DomainError("network: frequency must be > 0");
  const Complex i_omega(0.0, omega);
  const auto& d = circ.disorder;

  Eigen::Matrix2d c_mat, l_mat, lc_mat;
  c_mat << circ.c0 + d.dc0, -d.c12, -d.c12, circ.c0 - d.dc0;
  l_mat << circ.l0 + d.dl0, -d.l12, -d.l12, circ.l0 - d.dl0;
  lc_mat << circ.l_c + d.dl_c, 0.0, 0.0, circ.l_c - d.dl_c;

  Eigen::Matrix2cd inner = i_omega * c_mat.cast<Complex>() +
                           invert2(i_omega * l_mat.cast<Complex>(), "network impedance");
  inner(0, 1) += circ.g;   // i g sigma_y is the real antisymmetric off-diagonal pair
  inner(1, 0) -= circ.g;

  ComplexTwoPort z;
  z.m = i_omega * lc_mat.cast<Complex>() + invert2(inner, "network impedance (load resonance)");
  z.omega = omega;
  z.kind = ComplexTwoPort::Kind::impedance;
  require_finite(z.m, "network impedance");
  return z;
}

ComplexTwoPort scattering_from_impedance(const ComplexTwoPort& z, double z_tl) {
  if (z.kind != ComplexTwoPort::Kind::impedance) {
    throw DomainError("network: scattering conversion needs an impedance matrix");
  }
  if (!(z_tl > 0.0)) throw DomainError("network: line impedance must be > 0");
  const Eigen::Matrix2cd zn = z.m / z_tl;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  ComplexTwoPort s;
  s.m = invert2(zn - id, "network scattering") * (zn + id);
  s.omega = z.omega;
  s.kind = ComplexTwoPort::Kind::scattering;
  require_finite(s.m, "network scattering");
  return s;
}

std::pair<PauliAngle, ComplexTwoPort> pauli_form(const GyratorCircuit& circ, double omega) {
  circ.validate();
  if (circ.disorder.any()) {
    throw DomainError("network: angle form requires a disorder-free circuit");
  }
  if (!(omega > 0.0)) throw DomainError("network: frequency must be > 0");

  const Complex i_omega(0.0, omega);
  const Complex y0c = i_omega * circ.c0 + 1.0 / (i_omega * circ.l0);
  const Complex zc = i_omega * circ.l_c;
  const double g = circ.g;

  // Work with the inverse renormalized impedances; both stay finite at the
  // load resonance, where the load impedance itself diverges.
  const Complex w_tl = ((1.0 + zc * y0c) * (1.0 + zc * y0c) + g * g * zc * zc) / circ.z_tl;
  const Complex w0 = y0c + zc * y0c * y0c + zc * g * g;

  const double num = std::real(2.0 * g * w_tl);
  const double den = std::real(w_tl * w_tl - w0 * w0 - Complex(g * g));
  const double tan2t = den != 0.0
                           ? num / den
                           : (num == 0.0 ? 0.0
                                         : std::copysign(std::numeric_limits<double>::infinity(),
                                                         num));

  // The circuit matrices all commute with sigma_y, so the port matrix is
  // diagonal on the sigma_y eigenbasis with purely reactive eigenvalues
  // i x(+/-) z_tl. Each eigen-reflection is then the unimodular Cayley image
  // -exp(2 i atan x), giving S = exp(i phi) [cos(2 theta) 1 + i sin(2 theta)
  // sigma_y] with 2 theta the half-difference and phi the half-sum of the
  // reflection phases. The overall phase is physical: the direct computation
  // carries it, and dropping it would break the two-path equivalence.
  const double y0 = omega * circ.c0 - 1.0 / (omega * circ.l0);
  const double xc = omega * circ.l_c;
  const double a_plus = std::atan((xc - 1.0 / (y0 + g)) / circ.z_tl);
  const double a_minus = std::atan((xc - 1.0 / (y0 - g)) / circ.z_tl);
  double c = std::cos(a_plus - a_minus);
  double s = std::sin(a_plus - a_minus);
  double phi = kPi + a_plus + a_minus;
  // Report the branch with phase in (-pi/2, pi/2], so that on the real points
  // (phase 0) the sign of sin(2 theta) matches the direct S[0][1].
  while (phi > 0.5 * kPi) {
    phi -= kPi;
    c = -c;
    s = -s;
  }
  while (phi <= -0.5 * kPi) {
    phi += kPi;
    c = -c;
    s = -s;
  }

  PauliAngle angle;
  angle.tan2theta = tan2t;
  angle.cos2theta = c;
  angle.sin2theta = s;
  angle.zbar_tl = w_tl == Complex(0.0)
                      ? Complex(std::numeric_limits<double>::infinity(), 0.0)
                      : 1.0 / w_tl;
  angle.zbar0 = w0 == Complex(0.0) ? Complex(std::numeric_limits<double>::infinity(), 0.0)
                                   : 1.0 / w0;

  const Complex ph = std::polar(1.0, phi);
  const Complex diag = ph * c;
  const Complex off = ph * s;
  ComplexTwoPort s_mat;
  s_mat.m << diag, off, -off, diag;
  s_mat.omega = omega;
  s_mat.kind = ComplexTwoPort::Kind::scattering;
  return {angle, s_mat};
}

Eigen::Matrix3cd circulator_scattering(double z_tl, double r, double z0, double omega_r,
                                       double omega) {
  if (!(z_tl > 0.0 && r > 0.0 && z0 > 0.0)) {
    throw DomainError("network: circulator impedances must be > 0");
  }
  if (!(omega_r > 0.0 && omega > 0.0)) throw DomainError("network: frequencies must be > 0");

  // Inverse load impedance of the shunt resonators; zero on resonance, so the
  // matrix below is evaluated without ever forming the diverging impedance.
  const Complex w(0.0, (omega * omega - omega_r * omega_r) / (omega * omega_r * z0));

  const Complex rzw = r * z_tl * w;
  const Complex den = z_tl * z_tl + 3.0 * r * r + 2.0 * r * rzw - rzw * rzw;
  const double scale = z_tl * z_tl + 3.0 * r * r + std::abs(2.0 * r * rzw) + std::norm(rzw);
  if (!(std::abs(den) > 1e-14 * scale)) {
    throw NumericsError("network: circulator response singular at this frequency");
  }

  Eigen::Matrix3cd s;
  s(0, 0) = ((rzw - r) * (rzw - r) - z_tl * z_tl) / den;
  s(0, 1) = 2.0 * r * (r + z_tl - rzw) / den;
  s(0, 2) = 2.0 * r * (rzw + r - z_tl) / den;
  s(1, 0) = 2.0 * r * (r - z_tl - rzw) / den;
  s(1, 1) = s(0, 0);
  s(1, 2) = -2.0 * r * (rzw + r + z_tl) / den;
  s(2, 0) = 2.0 * r * (rzw + r + z_tl) / den;
  s(2, 1) = -2.0 * r * (rzw + r - z_tl) / den;
  s(2, 2) = ((rzw + r) * (rzw + r) - z_tl * z_tl) / den;
  if (!s.allFinite()) throw NumericsError("network: non-finite circulator entry");
  return s;
}

}  // namespace gyrokit
