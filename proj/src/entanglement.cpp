#include "qca/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qca/errors.hpp"
#include "qca/kernels.hpp"
#include "qca/parallel.hpp"
#include "qca/rng.hpp"

namespace qca {

namespace {

constexpr double kNormTolerance = 1e-8;

int checked_qubits(std::size_t dim) {
  const int n = qubit_count_for_dimension(dim);
  if (n < 2) throw InvalidArgument("Q needs at least two qubits");
  if (n > kMaxQubits + 8) throw CapacityError("state too large");
  return n;
}

// Purities of all qubits; the caller has already validated the state.
double purity_sum(std::span<const Complex> amps, int n) {
  const auto& k = kernels::active_kernels();
  double total = 0.0;
  for (int q = 0; q < n; ++q) {
    const auto m = k.qubit_moments(amps.data(), amps.size(), std::size_t{1} << (n - 1 - q));
    total += m.p0 * m.p0 + m.p1 * m.p1 + 2.0 * std::norm(m.coherence);
  }
  return total;
}

double q_from_purities(double purity_total, int n) {
  return std::clamp(2.0 - 2.0 / n * purity_total, 0.0, 1.0);
}

}  // namespace

double qubit_purity(std::span<const Complex> amplitudes, int n, int qubit) {
  if (amplitudes.size() != (std::size_t{1} << n)) throw InvalidArgument("state dimension does not match qubit count");
  if (qubit < 0 || qubit >= n) throw InvalidArgument("qubit index out of range");
  const auto m = kernels::active_kernels().qubit_moments(amplitudes.data(), amplitudes.size(),
                                                         std::size_t{1} << (n - 1 - qubit));
  return m.p0 * m.p0 + m.p1 * m.p1 + 2.0 * std::norm(m.coherence);
}

double meyer_wallach_q(std::span<const Complex> amplitudes) {
  const int n = checked_qubits(amplitudes.size());
  double norm = 0.0;
  for (const auto& a : amplitudes) norm += std::norm(a);
  if (std::abs(norm - 1.0) > kNormTolerance) throw InvalidArgument("state is not normalized");
  return q_from_purities(purity_sum(amplitudes, n), n);
}

double meyer_wallach_q(const StateVector& state) {
  return meyer_wallach_q(std::span<const Complex>(state.data(), static_cast<std::size_t>(state.size())));
}

std::vector<double> basis_state_q(const UnitaryMatrix& u) {
  const auto dim = static_cast<std::size_t>(u.rows());
  std::vector<double> q(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    q[b] = meyer_wallach_q(std::span<const Complex>(u.data() + b * dim, dim));
  }
  return q;
}

std::uint64_t member_seed(std::uint64_t master, std::size_t index) { return derive_stream(master, index); }

std::vector<QSample> q_distribution(const MapConfig& config, std::size_t ensemble_size, unsigned threads) {
  if (ensemble_size < 1) throw InvalidArgument("ensemble size must be >= 1");
  validate(config);
  const std::size_t dim = std::size_t{1} << config.topology.n;
  std::vector<QSample> out(ensemble_size * dim);
  parallel_for(ensemble_size, threads, [&](std::size_t i) {
    MapConfig member = config;
    member.seed = member_seed(config.seed, i);
    const UnitaryMatrix u = build_map(member);
    const auto qs = basis_state_q(u);
    for (std::size_t b = 0; b < dim; ++b) out[i * dim + b] = QSample{qs[b], b, member.seed};
  });
  return out;
}

std::vector<double> haar_q_reference(int n, std::size_t sample_count, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("Q needs n >= 2");
  if (n > kMaxQubits + 8) throw CapacityError("state too large");
  const std::size_t dim = std::size_t{1} << n;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  std::vector<Complex> psi(dim);
  std::vector<double> out;
  out.reserve(sample_count);
  for (std::size_t s = 0; s < sample_count; ++s) {
    double norm = 0.0;
    for (auto& a : psi) {
      const double re = normal(gen);
      const double im = normal(gen);
      a = {re, im};
      norm += re * re + im * im;
    }
    const double inv = 1.0 / std::sqrt(norm);
    for (auto& a : psi) a *= inv;
    out.push_back(q_from_purities(purity_sum(psi, n), n));
  }
  return out;
}

}  // namespace qca
