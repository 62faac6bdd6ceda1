#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qca/types.hpp"

namespace qca {

enum class RefKind {
  CueS,        // Wigner surmise, beta = 2
  Cue2S,       // two independent CUE blocks with fractions g1, g2
  Cue2SEqual,  // equal-block closed form
  CueY,        // e^{-y}
  CoeS,        // Wigner surmise, beta = 1
  CoeY,        // Porter-Thomas
  Coe2S,       // two independent COE blocks with fractions g1, g2
  Coe2SEqual,  // equal-block closed form
  PoissonS,    // e^{-s}
};

/// Whether a reference describes spacings (s) or eigenvector elements (y).
enum class RefVariable { Spacing, EigvecElement };

/// Analytic density with a tabulated CDF. The CDF table is built once at
/// construction and shared (immutably) between copies.
class ReferencePdf {
 public:
  explicit ReferencePdf(RefKind kind, double g1 = 0.5, double g2 = 0.5);

  RefKind kind() const { return kind_; }
  double g1() const { return g1_; }
  double g2() const { return g2_; }
  RefVariable variable() const;

  /// Canonical identifier, e.g. "CUE_s" or "CUE2_s".
  std::string_view name() const;

  /// Density at x >= 0 (CoeY diverges at 0 and returns +inf there).
  double density(double x) const;
  double cdf(double x) const;
  /// Inverse CDF for u in [0, 1).
  double quantile(double u) const;

  /// Integral of the density over [0, inf) and its first moment, by adaptive quadrature.
  double total_mass() const;
  double mean() const;

 private:
  struct Table;
  double raw_density(double x) const;
  double t_density(double t) const;

  RefKind kind_;
  double g1_;
  double g2_;
  std::shared_ptr<const Table> table_;
};

/// Parses names such as "CUE_s", "COE2_s", "Poisson_s" (case-sensitive).
RefKind ref_kind_from_string(std::string_view name);
std::string_view to_string(RefKind kind);
bool has_block_fractions(RefKind kind);

struct GofResult {
  double statistic = 0.0;
  std::size_t sample_size = 0;
  double critical_value = 0.0;
  double alpha = 0.0;
  bool reject = false;
};

/// Quantile of the asymptotic Kolmogorov distribution: K(x) = 1 - alpha.
double kolmogorov_critical(double alpha);

/// One-sample KS against ref's CDF. Requires >= 50 samples and alpha in {0.01, 0.05}.
GofResult ks_test(std::span<const double> samples, const ReferencePdf& ref, double alpha);

/// Two-sample KS; critical value c(alpha) sqrt((n + m) / (n m)).
GofResult ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha);

/// Haar-distributed N x N unitary (Ginibre + QR with phase correction).
UnitaryMatrix sample_cue(std::size_t n, std::uint64_t seed);

/// Haar-random unit vector (normalized complex Gaussian).
StateVector haar_state(std::size_t dim, std::uint64_t seed);

/// Symmetric unitary W = U^T U with U Haar.
UnitaryMatrix sample_coe(std::size_t n, std::uint64_t seed);

}  // namespace qca
