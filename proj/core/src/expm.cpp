#include "gyrokit/expm.hpp"

#include <cmath>
#include <vector>

#include "gyrokit/errors.hpp"

namespace gyrokit {

namespace {

using Matrix = Eigen::MatrixXcd;

double norm1(const Matrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

/// Final Pade step: solve (v - u) x = (v + u).
Matrix pade_solve(const Matrix& u, const Matrix& v) {
  return (v - u).partialPivLu().solve(v + u);
}

Matrix pade_low(const Matrix& a, const std::vector<double>& b) {
  const auto n = a.rows();
  const Matrix a2 = a * a;
  Matrix even = b[0] * Matrix::Identity(n, n);
  Matrix odd = b[1] * Matrix::Identity(n, n);
  Matrix power = Matrix::Identity(n, n);
  for (std::size_t k = 2; k < b.size(); k += 2) {
    power = (k == 2) ? a2 : Matrix(power * a2);
    even += b[k] * power;
    if (k + 1 < b.size()) odd += b[k + 1] * power;
  }
  const Matrix u = a * odd;
  return pade_solve(u, even);
}

Matrix pade13(const Matrix& a) {
  static const double b[14] = {64764752532480000.0,
                               32382376266240000.0,
                               7771770303897600.0,
                               1187353796428800.0,
                               129060195264000.0,
                               10559470521600.0,
                               670442572800.0,
                               33522128640.0,
                               1323241920.0,
                               40840800.0,
                               960960.0,
                               16380.0,
                               182.0,
                               1.0};
  const auto n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
           b[1] * id);
  const Matrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return pade_solve(u, v);
}

}  // namespace

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw DomainError("expm: matrix must be square");
  if (!a.allFinite()) throw DomainError("expm: non-finite matrix entry");
  const double nrm = norm1(a);

  // Order thresholds from the standard backward-error analysis.
  if (nrm <= 1.495585217958292e-2) {
    return pade_low(a, {120.0, 60.0, 12.0, 1.0});
  }
  if (nrm <= 2.539398330063230e-1) {
    return pade_low(a, {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0});
  }
  if (nrm <= 9.504178996162932e-1) {
    return pade_low(a, {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0});
  }
  if (nrm <= 2.097847961257068) {
    return pade_low(a, {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                        2162160.0, 110880.0, 3960.0, 90.0, 1.0});
  }

  const double theta13 = 5.371920351148152;
  int squarings = 0;
  Matrix scaled = a;
  if (nrm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    scaled /= std::pow(2.0, squarings);
  }
  Matrix result = pade13(scaled);
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace gyrokit
