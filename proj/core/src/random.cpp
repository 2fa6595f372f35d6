#include "cloneq/random.hpp"

#include <cmath>

namespace cloneq {

CVector haar_pure_state(int dim, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("state dimension must be positive");
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(rng.normal(), rng.normal());
  v.normalize();
  return v;
}

Matrix haar_unitary(int dim, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("unitary dimension must be positive");
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fold the phases of the R diagonal into Q to make the distribution Haar
  for (int c = 0; c < dim; ++c) {
    Complex rc = r(c, c);
    double mag = std::abs(rc);
    q.col(c) *= (mag > 0.0) ? rc / mag : Complex(1.0, 0.0);
  }
  return q;
}

std::vector<double> simplex_point(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("simplex dimension must be positive");
  std::vector<double> w(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double u;
    do {
      u = rng.uniform();
    } while (u <= 0.0);
    w[i] = -std::log(u);
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace cloneq
