#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "gyrokit/network.hpp"

namespace gyrokit {

/// Matched gyration conductance for a given coupling inductance:
///   G0 = [sqrt(1 + 2 y^2) - 1] / (z_tl y^2),  y = sqrt(2) l_c omega0 / z_tl.
/// A series expansion is used for l_c omega0 / z_tl < 1e-6 to avoid 0/0;
/// the limit values are 1/z_tl at l_c = 0 and ~1/(l_c omega0) for large l_c.
[[nodiscard]] double optimal_conductance(const GyratorCircuit& circ);

/// Frequency at which the reflection vanishes: the root of
/// (1/zbar_tl)^2 - (1/zbar0)^2 - g^2 nearest the load resonance. Bracketing
/// plus Brent on [0.5, 1.5] omega0; when the expression only touches zero
/// (double root, e.g. l_c = 0 with g = 1/z_tl), the stationary point is
/// located through the analytic derivative and accepted if the residual
/// vanishes to tolerance. Throws NumericsError when no root exists.
[[nodiscard]] double central_frequency(const GyratorCircuit& circ, double rel_tol = 1e-12);

/// Passband edges and width, defined by |tan(2 theta)| = 1.
struct BandwidthResult {
  double omega_minus = 0.0;     ///< lower edge [rad/s]
  double omega_plus = 0.0;      ///< upper edge [rad/s]
  double delta = 0.0;           ///< omega_plus - omega_minus [rad/s]
  double residual_minus = 0.0;  ///< | |tan2theta| - 1 | at the lower edge
  double residual_plus = 0.0;   ///< | |tan2theta| - 1 | at the upper edge
  double estimate_large_lc = 0.0;  ///< z0 z_tl / (l_c^2 omega0) [rad/s]
  double estimate_lc0 = 0.0;       ///< 2 omega0 sqrt(1 + beta (z0/z_tl)^2) [rad/s]
  double beta_lc0 = 0.0;           ///< (g^2 z_tl^2 + 2|g| z_tl - 1)/4
};

/// Locate the two |tan(2 theta)| = 1 crossings nearest the load resonance by
/// marching geometrically outwards from omega0 and root-solving each bracket,
/// so the returned edges always satisfy omega_minus < omega0 < omega_plus.
/// Throws NumericsError when omega0 is not inside a passband or an edge
/// cannot be bracketed within [1e-3, 1e3] times the load resonance.
[[nodiscard]] BandwidthResult bandwidth(const GyratorCircuit& circ);

/// Transmission versus mean photon number at the load resonance.
struct CompressionCurve {
  std::vector<double> n;        ///< photon-number grid
  std::vector<double> s12_abs;  ///< |S12| at each grid point
  double s12_at_zero = 0.0;     ///< unloaded transmission
  double n_threshold = 0.0;     ///< interpolated photon number at the threshold drop
};

/// Sweep the photon-number derated conductance through the scattering
/// response at omega0 and interpolate the photon number where |S12| falls
/// threshold_db below its unloaded value (amplitude ratio 10^(-db/10),
/// interpolated linearly in log photon number). Requires the circuit
/// conductance to equal optimal_conductance to 1e-6 relative, and the grid
/// to start at 0 and cross the threshold. Throws DomainError / NumericsError
/// otherwise.
[[nodiscard]] CompressionCurve compression_curve(const GyratorCircuit& circ,
                                                 const std::vector<double>& n_grid,
                                                 double threshold_db = 1.0);

/// First-order scattering deviation from circuit disorder.
struct DisorderDeviation {
  Eigen::Matrix2cd ds = Eigen::Matrix2cd::Zero();     ///< first-order deviation
  Eigen::Matrix2cd exact = Eigen::Matrix2cd::Zero();  ///< S(disordered) - S(nominal)
  std::complex<double> dz_sigma_z;  ///< sigma_z coefficient of the impedance shift [Ohm]
  std::complex<double> dz_sigma_x;  ///< sigma_x coefficient of the impedance shift [Ohm]
};

/// Taylor-expand the disordered impedance about the symmetric circuit:
///   dZ = i w dl_c sigma_z - [(i w dc0 - dl0/(i w l0^2))/(y0^2+g^2)] sigma_z
///        + [(i w c12 - l12/(i w l0^2))/(y0^2+g^2)] sigma_x,
///   dS = -(1 - S) dZ (1 - S) / (2 z_tl),
/// and also recompute the exact deviation for comparison. `large_disorder`
/// (optional) is set when any disorder field exceeds 10% of its nominal
/// element.
[[nodiscard]] DisorderDeviation disorder_first_order(const GyratorCircuit& circ, double omega,
                                                     bool* large_disorder = nullptr);

/// Disorder parameter selector for tolerance searches.
enum class DisorderParam { dl_c, dc0, dl0, c12, l12 };

/// Norm used to measure scattering deviation.
enum class DeviationNorm { max_abs, frobenius };

/// Largest magnitude of one disorder parameter that keeps the deviation of
/// the exact scattering matrix (at omega0, with the conductance re-solved to
/// its matched value) within `budget`. Scalar bracketed root-solve; the
/// deviation must grow monotonically while the bracket expands. budget must
/// lie in (0, 0.2].
[[nodiscard]] double disorder_tolerance(const GyratorCircuit& circ, DisorderParam which,
                                        double budget,
                                        DeviationNorm norm = DeviationNorm::max_abs);

/// One frequency-conversion block of the drive-induced linear response.
struct MixingBlock {
  double omega_target = 0.0;  ///< outgoing frequency [rad/s]
  double omega_source = 0.0;  ///< incoming frequency [rad/s]
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
};

/// Drive-induced conductance modulation and the rectangular harmonic map it
/// generates between the fundamental and third-harmonic sidebands.
struct MixingResult {
  std::vector<MixingBlock> blocks;       ///< the six nonzero blocks
  Eigen::MatrixXcd rectangular;          ///< 8x4 map {-3w0,-w0,+w0,+3w0} <- {-w0,+w0}
  std::complex<double> dg_dc;            ///< conductance shift, DC component [S]
  std::complex<double> dg_plus;          ///< component at +2 omega0 [S]
  std::complex<double> dg_minus;         ///< component at -2 omega0 [S]
  Eigen::Matrix2cd w_response;           ///< node response W(+omega0) to incoming amplitudes
  std::complex<double> u1, u2;           ///< node amplitudes W a at +omega0
};

/// First-order frequency mixing induced by a monochromatic drive at the load
/// resonance. `a1`, `a2` are incoming amplitudes at +omega0; `chi` converts
/// squared node amplitudes to photon-number loading (chi |u_k|^2 = pi z0 N_k
/// / R_Q; the default chi = 1 treats |u_k|^2 as already normalized). Each
/// block is M(w; w') = (w'/w) z_tl dG(w - w') W(w') (2 i sigma_y) W(w'), with
/// W(-omega0) the conjugate response. Requires a disorder-free circuit.
[[nodiscard]] MixingResult mixing_matrices(const GyratorCircuit& circ, std::complex<double> a1,
                                           std::complex<double> a2, double chi = 1.0);

}  // namespace gyrokit
