#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qca/operators.hpp"
#include "qca/types.hpp"

namespace qca {

struct QSample {
  double q = 0.0;
  std::size_t source_state = 0;
  std::uint64_t map_seed = 0;
};

/// Purity Tr[rho_j^2] of the reduced state of `qubit` (0 = most significant bit).
double qubit_purity(std::span<const Complex> amplitudes, int n, int qubit);

/// Meyer-Wallach Q = 2 - (2/n) sum_j Tr[rho_j^2]. Throws InvalidArgument for
/// an unnormalized state (norm deviation > 1e-8) or a dimension that is not 2^n, n >= 2.
double meyer_wallach_q(std::span<const Complex> amplitudes);
double meyer_wallach_q(const StateVector& state);

/// Q of every column of U, i.e. of U applied to each computational basis state.
std::vector<double> basis_state_q(const UnitaryMatrix& u);

/// Seed of ensemble member `index` under master seed `master`.
std::uint64_t member_seed(std::uint64_t master, std::size_t index);

/// Builds `ensemble_size` maps with seeds member_seed(config.seed, i), evolves all
/// 2^n basis states and returns their Q values ordered by (map, state).
/// threads == 0 uses the hardware concurrency.
std::vector<QSample> q_distribution(const MapConfig& config, std::size_t ensemble_size, unsigned threads = 0);

/// Q of `sample_count` Haar-random n-qubit pure states.
std::vector<double> haar_q_reference(int n, std::size_t sample_count, std::uint64_t seed);

}  // namespace qca
