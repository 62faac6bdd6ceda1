#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qca/errors.hpp"
#include "qca/refdist.hpp"

namespace qca {

namespace {

constexpr double kSqrtPi = 1.77245385090551602729;

// CDFs are tabulated in t = sqrt(x), where t -> 2t p(t^2) is smooth even for
// the 1/sqrt(y) Porter-Thomas singularity. All tails are below 1e-13 at x = 60.
constexpr double kXMax = 60.0;
constexpr std::size_t kGridIntervals = 6000;
// Every density is below 1e-300 beyond x = 700 (t = sqrt(700)).
constexpr double kTailCutoff = 26.5;

double cue2(double s, double g1, double g2) {
  const double e1 = std::erf(2.0 * g1 * s / kSqrtPi);
  const double e2 = std::erf(2.0 * g2 * s / kSqrtPi);
  const double c1 = std::erfc(2.0 * g1 * s / kSqrtPi);
  const double c2 = std::erfc(2.0 * g2 * s / kSqrtPi);
  const double s2 = s * s;
  const double a = 4.0 * s2 / kPi;
  return 2.0 * g1 * g2 * (1.0 - e1 - e2 + e1 * e2) +
         32.0 / (kPi * kPi) * s2 * std::exp(-a * (g1 * g1 + g2 * g2)) *
             (g1 * g1 * g1 * g1 + g1 * g1 * g2 * g2 + g2 * g2 * g2 * g2) +
         8.0 / kPi * g1 * g2 * s *
             (g1 * std::exp(-a * g1 * g1) * (1.0 - g1 * g1 * a) * c2 +
              g2 * std::exp(-a * g2 * g2) * (1.0 - g2 * g2 * a) * c1);
}

double cue2_equal(double s) {
  const double c = std::erfc(s / kSqrtPi);
  return 0.5 * c * c + 6.0 / (kPi * kPi) * s * s * std::exp(-2.0 * s * s / kPi) +
         2.0 / kPi * s * std::exp(-s * s / kPi) * (1.0 - s * s / kPi) * c;
}

double coe2(double s, double g1, double g2) {
  const double s2 = s * s;
  return kPi / 2.0 * s * g1 * g1 * g1 * std::erfc(kSqrtPi * g2 * s / 2.0) * std::exp(-kPi * g1 * g1 * s2 / 4.0) +
         kPi / 2.0 * s * g2 * g2 * g2 * std::erfc(kSqrtPi * g1 * s / 2.0) * std::exp(-kPi * g2 * g2 * s2 / 4.0) +
         2.0 * g1 * g2 * std::exp(-kPi * s2 * (g1 * g1 + g2 * g2) / 4.0);
}

double coe2_equal(double s) {
  return 0.5 * (std::erfc(kSqrtPi * s / 4.0) * kPi * s / 4.0 * std::exp(-kPi * s * s / 16.0) +
                std::exp(-kPi * s * s / 8.0));
}

}  // namespace

struct ReferencePdf::Table {
  double dt = 0.0;
  std::vector<double> cdf;    // F at t_i = i * dt
  std::vector<double> slope;  // dF/dt at t_i
};

ReferencePdf::ReferencePdf(RefKind kind, double g1, double g2) : kind_(kind), g1_(0.5), g2_(0.5) {
  if (has_block_fractions(kind)) {
    if (!(g1 > 0.0 && g1 < 1.0 && g2 > 0.0 && g2 < 1.0) || std::abs(g1 + g2 - 1.0) > 1e-12) {
      throw InvalidArgument("block fractions must lie in (0, 1) and sum to 1");
    }
    g1_ = g1;
    g2_ = g2;
  }

  auto integrand = [this](double t) { return t_density(t); };

  auto table = std::make_shared<Table>();
  const double tmax = std::sqrt(kXMax);
  table->dt = tmax / static_cast<double>(kGridIntervals);
  table->cdf.resize(kGridIntervals + 1);
  table->slope.resize(kGridIntervals + 1);
  double acc = 0.0;
  table->cdf[0] = 0.0;
  table->slope[0] = integrand(0.0);
  for (std::size_t i = 1; i <= kGridIntervals; ++i) {
    const double a = table->dt * static_cast<double>(i - 1);
    const double b = table->dt * static_cast<double>(i);
    acc += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, a, b, 0);
    table->cdf[i] = acc;
    table->slope[i] = integrand(b);
  }
  table_ = std::move(table);
}

RefVariable ReferencePdf::variable() const {
  return (kind_ == RefKind::CueY || kind_ == RefKind::CoeY) ? RefVariable::EigvecElement : RefVariable::Spacing;
}

std::string_view ReferencePdf::name() const { return to_string(kind_); }

double ReferencePdf::raw_density(double x) const {
  switch (kind_) {
    case RefKind::CueS:
      return 32.0 * x * x / (kPi * kPi) * std::exp(-4.0 * x * x / kPi);
    case RefKind::Cue2S:
      return cue2(x, g1_, g2_);
    case RefKind::Cue2SEqual:
      return cue2_equal(x);
    case RefKind::CueY:
      return std::exp(-x);
    case RefKind::CoeS:
      return kPi * x / 2.0 * std::exp(-kPi * x * x / 4.0);
    case RefKind::CoeY:
      return x == 0.0 ? std::numeric_limits<double>::infinity() : std::exp(-x / 2.0) / std::sqrt(2.0 * kPi * x);
    case RefKind::Coe2S:
      return coe2(x, g1_, g2_);
    case RefKind::Coe2SEqual:
      return coe2_equal(x);
    case RefKind::PoissonS:
      return std::exp(-x);
  }
  return 0.0;
}

// dF/dt in the t = sqrt(x) variable.
double ReferencePdf::t_density(double t) const {
  if (t > kTailCutoff) return 0.0;
  // Closed form avoids t * t underflowing into the y^{-1/2} pole.
  if (kind_ == RefKind::CoeY) return std::sqrt(2.0 / kPi) * std::exp(-0.5 * t * t);
  if (t == 0.0) return 0.0;
  return 2.0 * t * raw_density(t * t);
}

double ReferencePdf::density(double x) const {
  if (!(x >= 0.0)) throw InvalidArgument("reference densities are defined for x >= 0");
  return raw_density(x);
}

double ReferencePdf::cdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  const Table& tb = *table_;
  const double t = std::sqrt(x);
  const double pos = t / tb.dt;
  if (pos >= static_cast<double>(kGridIntervals)) return std::min(1.0, tb.cdf.back());
  const auto i = static_cast<std::size_t>(pos);
  const double u = pos - static_cast<double>(i);
  const double f0 = tb.cdf[i], f1 = tb.cdf[i + 1];
  const double delta = (f1 - f0) / tb.dt;
  if (delta <= 0.0) return f0;
  // Cubic Hermite with Fritsch-Carlson limiting keeps the interpolant monotone.
  double m0 = tb.slope[i], m1 = tb.slope[i + 1];
  const double a = m0 / delta, b = m1 / delta;
  if (a * a + b * b > 9.0) {
    const double tau = 3.0 / std::sqrt(a * a + b * b);
    m0 = tau * a * delta;
    m1 = tau * b * delta;
  }
  const double u2 = u * u, u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u, h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
  return std::clamp(h00 * f0 + h10 * tb.dt * m0 + h01 * f1 + h11 * tb.dt * m1, f0, f1);
}

double ReferencePdf::quantile(double u) const {
  if (!(u >= 0.0 && u < 1.0)) throw InvalidArgument("quantile argument must lie in [0, 1)");
  const Table& tb = *table_;
  if (u >= tb.cdf.back()) return kXMax;
  const auto it = std::upper_bound(tb.cdf.begin(), tb.cdf.end(), u);
  const auto i = static_cast<std::size_t>(std::distance(tb.cdf.begin(), it));
  double lo = tb.dt * static_cast<double>(i - 1);
  double hi = tb.dt * static_cast<double>(i);
  lo *= lo;
  hi *= hi;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double ReferencePdf::total_mass() const {
  auto f = [this](double t) { return t_density(t); };
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

double ReferencePdf::mean() const {
  auto f = [this](double t) { return t * t * t_density(t); };
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

RefKind ref_kind_from_string(std::string_view name) {
  static constexpr RefKind kAll[] = {RefKind::CueS, RefKind::Cue2S, RefKind::Cue2SEqual,
                                     RefKind::CueY, RefKind::CoeS,  RefKind::CoeY,
                                     RefKind::Coe2S, RefKind::Coe2SEqual, RefKind::PoissonS};
  for (RefKind k : kAll) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown reference distribution '" + std::string(name) + "'");
}

std::string_view to_string(RefKind kind) {
  switch (kind) {
    case RefKind::CueS: return "CUE_s";
    case RefKind::Cue2S: return "CUE2_s";
    case RefKind::Cue2SEqual: return "CUE2_s_equal";
    case RefKind::CueY: return "CUE_y";
    case RefKind::CoeS: return "COE_s";
    case RefKind::CoeY: return "COE_y";
    case RefKind::Coe2S: return "COE2_s";
    case RefKind::Coe2SEqual: return "COE2_s_equal";
    case RefKind::PoissonS: return "Poisson_s";
  }
  return "CUE_s";
}

bool has_block_fractions(RefKind kind) { return kind == RefKind::Cue2S || kind == RefKind::Coe2S; }

}  // namespace qca
