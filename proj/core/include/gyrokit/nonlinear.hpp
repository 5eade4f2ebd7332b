#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace gyrokit {

/// Exact binomial coefficient n-choose-k as a double (small arguments).
[[nodiscard]] double binomial(int n, int k);

/// Generalized binomial coefficient (1/2 choose m) by the product formula.
[[nodiscard]] double half_binomial(int m);

/// Derivative table of powers of a transmission coefficient: entry (m, n) is
/// d^n(T^m)/dV^n built from the value and plain derivatives {T, T', ..., up
/// to order 4} via the composition rule for the outer power function.
/// Row m = 0 is the constant 1.
[[nodiscard]] Eigen::MatrixXd power_derivative_table(const std::vector<double>& t_derivatives,
                                                     int m_max);

/// Per-junction inputs for the series assembly: gap energy and the table
/// D(m, n) = d^n(T^m)/dV^n at the operating point (row 0 = constant 1).
struct JunctionDerivatives {
  double gap = 0.0;          ///< pair-breaking energy scale [J]
  Eigen::MatrixXd power_derivatives;  ///< (m_max+1) x (n_max+1) table

  void validate() const;  ///< throws DomainError on non-finite or empty tables
};

/// Truncation orders of the harmonic series tables.
struct SeriesTruncation {
  int n_max = 4;    ///< highest charge power
  int m_max = 6;    ///< highest transmission power retained
  int ell_max = 6;  ///< highest cosine harmonic (support ends at m_max)

  void validate() const;
};

/// Harmonic-series coefficients of the charge-dependent energy expansion.
/// Node j couples through the opposite junction, so lambda[0]/xi[0] are built
/// from the second junction's derivative data and vice versa. Tables are
/// indexed directly: lambda[j](n, ell) and xi[j](n), row/column 0 unused.
struct SeriesCoefficients {
  SeriesTruncation trunc;
  std::array<Eigen::MatrixXd, 2> lambda;
  std::array<Eigen::VectorXd, 2> xi;
};

/// Assemble the cosine-harmonic coefficient tables
///   lambda_{j,n,l} = -sum_{m>=max(l,1)} 2 (-1)^(m-l) 4^(1-m) (1/2 c m)
///                    (2m c m-l) (gap/4) d^n(T^m)/dV^n
///   xi_{j,n}       =  sum_{m>=1} (-1)^m 4^(1-m) (1/2 c m) (2m c m)
///                    (gap/4) d^n(T^m)/dV^n
/// with the cross-arm index convention described on SeriesCoefficients.
[[nodiscard]] SeriesCoefficients series_coefficients(const JunctionDerivatives& junction1,
                                                     const JunctionDerivatives& junction2,
                                                     const SeriesTruncation& trunc = {});

/// Inputs of the canonical-charge relation
///   q = q0 + C v + sum_{n>=2} g_{n+1} v^on / n!
/// (v the branch-voltage pair, ^o the componentwise power, g_{n+1} diagonal).
struct ChargeInversion {
  Eigen::Matrix2d c = Eigen::Matrix2d::Identity();  ///< capacitance matrix [F]
  Eigen::Vector2d q0 = Eigen::Vector2d::Zero();     ///< charge offsets [C]
  /// couplings[i] is the diagonal of g_{n+1} for velocity power n = i + 2.
  std::vector<Eigen::Vector2d> couplings;

  void validate() const;  ///< throws DomainError (singular C, non-finite entries)
};

/// Series solution of the charge relation for the voltages.
struct InversionResult {
  std::vector<Eigen::Vector2d> x_terms;  ///< X_0 .. X_K at the given charge
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();  ///< sum of the terms
};

/// Invert q(v) perturbatively to order K (K <= 4): X_0 = C^-1 (q - q0) and
///   X_k = -sum_n C^-1 g_{n+1} o sum_{compositions sum j m_j = k-1}
///         X_0^o(n - sum m_j)/(n - sum m_j)! o prod_j X_j^o m_j / m_j!.
/// Exact when the coupling tables vanish.
[[nodiscard]] InversionResult charge_inversion(const ChargeInversion& ci,
                                               const Eigen::Vector2d& q, int order_k = 3);

/// One term of the residual charge-energy expansion.
struct ErrorHamiltonianTerm {
  std::string kind;        ///< "charge-harmonic", "charge-plain" or "cross-charge"
  int node = 0;            ///< index of the charge quadrature (0-based)
  int charge_power = 1;    ///< power n of (q - q0)
  int harmonic = 0;        ///< cosine harmonic of the opposite phase (0 if none)
  double coefficient = 0.0;  ///< multiplier of (q-q0)^n cos(l theta) [J / C^n]
  bool has_bound = false;  ///< true when the impedance inequality applies
  double lhs = 0.0;        ///< |Lambda| (2e)^n / (n! C_j^n)
  double rhs = 0.0;        ///< (4 pi Z_j / R_Q)^(n/2)
  bool satisfied = true;   ///< lhs < rhs (vacuously true without a bound)
};

/// Coefficient report of the residual Hamiltonian plus tolerance flags.
struct ErrorHamiltonianReport {
  std::vector<ErrorHamiltonianTerm> terms;
  bool all_satisfied = true;
};

/// Assemble every nonzero term of the residual Hamiltonian
///   - (q_j - q0_j)/C_j sum_{l>=2} lambda_{j,1,l} cos(l theta_other)
///   - sum_{n>=2} (q_j - q0_j)^n/(n! C_j^n) sum_{l>=1} lambda_{j,n,l} cos(l theta_other)
///   - sum_{n>=3} (q_j - q0_j)^n/(n! C_j^n) xi_{j,n}
///   + C_c/(C_1 C_2) (q_1 - q0_1)(q_2 - q0_2)
/// and evaluate the impedance tolerance inequality for each harmonic term,
/// comparing |lambda|(2e)^n/(n! C_j^n) against (4 pi Z_j / R_Q)^(n/2) for the
/// supplied mode impedances. C_j are the diagonal of ci.c and C_c the negated
/// off-diagonal.
[[nodiscard]] ErrorHamiltonianReport error_hamiltonian_report(
    const ChargeInversion& ci, const SeriesCoefficients& coeffs,
    const std::array<double, 2>& mode_impedance);

}  // namespace gyrokit
