#include <cmath>
#include <random>

#include "qca/errors.hpp"
#include "qca/refdist.hpp"

namespace qca {

UnitaryMatrix sample_cue(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  const auto dim = static_cast<Eigen::Index>(n);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  UnitaryMatrix z(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = normal(gen);
      z(i, j) = Complex(re, normal(gen));
    }
  }
  Eigen::HouseholderQR<UnitaryMatrix> qr(z);
  UnitaryMatrix q = qr.householderQ();
  // Fix the phase freedom of QR: Q diag(r_jj / |r_jj|) is exactly Haar.
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

UnitaryMatrix sample_coe(std::size_t n, std::uint64_t seed) {
  const UnitaryMatrix u = sample_cue(n, seed);
  UnitaryMatrix w = u.transpose() * u;
  const UnitaryMatrix wt = w.transpose();
  w = 0.5 * (w + wt);
  return w;
}

}  // namespace qca

namespace qca {

StateVector haar_state(std::size_t dim, std::uint64_t seed) {
  if (dim < 1) throw InvalidArgument("dimension must be >= 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  StateVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(gen);
    v(i) = Complex(re, normal(gen));
  }
  v.normalize();
  return v;
}

}  // namespace qca
