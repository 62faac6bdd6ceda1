#include "qca/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "qca/errors.hpp"
#include "qca/operators.hpp"

#ifdef QCA_HAVE_LAPACK
#include <lapacke.h>
#endif

namespace qca {

namespace {

constexpr double kUnitarityTolerance = 1e-6;
constexpr double kOrthonormalityTolerance = 1e-8;

double wrap_angle(double a) {
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

void require_unitary(const UnitaryMatrix& u, const char* what) {
  if (u.rows() != u.cols() || u.rows() == 0) throw InvalidArgument(std::string(what) + " must be square");
  if (unitarity_deviation(u) > kUnitarityTolerance) throw InvalidArgument(std::string(what) + " is not unitary");
}

}  // namespace

Eigensystem eigendecompose(const UnitaryMatrix& u) {
  require_unitary(u, "input");
  const auto n = u.rows();
  Eigensystem out;
  out.angles.resize(static_cast<std::size_t>(n));

  // T is diagonal up to rounding for a normal matrix, so the Schur vectors
  // are eigenvectors and already orthonormal, degenerate clusters included.
#ifdef QCA_HAVE_LAPACK
  UnitaryMatrix t = u;
  Eigen::VectorXcd w(n);
  out.vectors.resize(n, n);
  lapack_int sdim = 0;
  const lapack_int info = LAPACKE_zgees(
      LAPACK_COL_MAJOR, 'V', 'N', nullptr, static_cast<lapack_int>(n), reinterpret_cast<lapack_complex_double*>(t.data()),
      static_cast<lapack_int>(n), &sdim, reinterpret_cast<lapack_complex_double*>(w.data()),
      reinterpret_cast<lapack_complex_double*>(out.vectors.data()), static_cast<lapack_int>(n));
  if (info != 0) throw NumericError("complex Schur iteration did not converge (zgees info " + std::to_string(info) + ")");
  for (Eigen::Index i = 0; i < n; ++i) out.angles[static_cast<std::size_t>(i)] = wrap_angle(std::arg(w(i)));
#else
  Eigen::ComplexSchur<UnitaryMatrix> schur(u, /*computeU=*/true);
  if (schur.info() != Eigen::Success) throw NumericError("complex Schur iteration did not converge");
  const auto& t = schur.matrixT();
  out.vectors = schur.matrixU();
  for (Eigen::Index i = 0; i < n; ++i) out.angles[static_cast<std::size_t>(i)] = wrap_angle(std::arg(t(i, i)));
#endif
  return out;
}

std::vector<double> spacings(std::span<const double> eigenangles) {
  if (eigenangles.size() < 2) throw InvalidArgument("spacings need at least two eigenangles");
  std::vector<double> sorted(eigenangles.begin(), eigenangles.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  const double scale = n / kTwoPi;
  std::vector<double> s(sorted.size());
  for (std::size_t j = 0; j + 1 < sorted.size(); ++j) s[j] = (sorted[j + 1] - sorted[j]) * scale;
  s.back() = (sorted.front() + kTwoPi - sorted.back()) * scale;
  return s;
}

std::vector<double> eigvec_elements(const UnitaryMatrix& v) {
  if (v.rows() != v.cols() || v.rows() == 0) throw InvalidArgument("eigenvector basis must be square");
  const UnitaryMatrix gram = v.adjoint() * v;
  if ((gram - UnitaryMatrix::Identity(v.rows(), v.cols())).cwiseAbs().maxCoeff() > kOrthonormalityTolerance) {
    throw InvalidArgument("eigenvectors are not orthonormal");
  }
  const double n = static_cast<double>(v.rows());
  std::vector<double> y;
  y.reserve(static_cast<std::size_t>(v.size()));
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    for (Eigen::Index i = 0; i < v.rows(); ++i) y.push_back(n * std::norm(v(i, j)));
  }
  return y;
}

SpectralData analyze_spectrum(const UnitaryMatrix& u) {
  Eigensystem es = eigendecompose(u);
  SpectralData d;
  d.spacings = spacings(es.angles);
  d.eigvec_elements = eigvec_elements(es.vectors);
  d.eigenangles = std::move(es.angles);
  std::sort(d.eigenangles.begin(), d.eigenangles.end());
  return d;
}

std::vector<double> fidelity_decay(const UnitaryMatrix& u, const UnitaryMatrix& perturbation,
                                   const StateVector& state, int steps) {
  if (steps < 1) throw InvalidArgument("fidelity decay needs at least one step");
  if (u.rows() != perturbation.rows() || u.cols() != perturbation.cols() || u.rows() != state.size()) {
    throw InvalidArgument("operator and state dimensions do not match");
  }
  require_unitary(u, "map");
  require_unitary(perturbation, "perturbation");
  if (std::abs(state.squaredNorm() - 1.0) > 1e-8) throw InvalidArgument("state is not normalized");

  const UnitaryMatrix perturbed = perturbation * u;
  StateVector ideal = state;
  StateVector noisy = state;
  std::vector<double> f;
  f.reserve(static_cast<std::size_t>(steps));
  for (int t = 1; t <= steps; ++t) {
    ideal = u * ideal;
    noisy = perturbed * noisy;
    f.push_back(std::clamp(std::norm(noisy.dot(ideal)), 0.0, 1.0));
  }
  return f;
}

UnitaryMatrix sigma_z_perturbation(int n, double epsilon) {
  if (n < 1 || n > kMaxQubits) throw InvalidArgument("qubit count out of range");
  const auto dim = Eigen::Index{1} << n;
  UnitaryMatrix p = UnitaryMatrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const int ones = __builtin_popcountll(static_cast<unsigned long long>(b));
    p(b, b) = std::polar(1.0, epsilon * static_cast<double>(n - 2 * ones));
  }
  return p;
}

LogLinearFit fit_log_linear(std::span<const double> fidelities, double floor) {
  std::vector<double> ts{0.0};
  std::vector<double> ls{0.0};
  for (std::size_t i = 0; i < fidelities.size(); ++i) {
    if (!(fidelities[i] >= floor)) break;
    ts.push_back(static_cast<double>(i + 1));
    ls.push_back(std::log(fidelities[i]));
  }
  LogLinearFit fit;
  fit.points = ts.size();
  if (ts.size() < 3) return fit;
  const double k = static_cast<double>(ts.size());
  double mt = 0, ml = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mt += ts[i];
    ml += ls[i];
  }
  mt /= k;
  ml /= k;
  double stt = 0, stl = 0, sll = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - mt) * (ts[i] - mt);
    stl += (ts[i] - mt) * (ls[i] - ml);
    sll += (ls[i] - ml) * (ls[i] - ml);
  }
  fit.slope = stl / stt;
  fit.intercept = ml - fit.slope * mt;
  fit.r_squared = sll > 0 ? (stl * stl) / (stt * sll) : 1.0;
  return fit;
}

}  // namespace qca
