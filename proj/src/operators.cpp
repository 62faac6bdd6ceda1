#include "qca/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qca/errors.hpp"
#include "qca/kernels.hpp"
#include "qca/rng.hpp"

namespace qca {

namespace {

double reduce_angle(double a) {
  if (!std::isfinite(a)) throw InvalidArgument("rotation angle must be finite");
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

std::size_t bit_reverse(std::size_t b, int n) {
  std::size_t r = 0;
  for (int i = 0; i < n; ++i) {
    r = (r << 1) | (b & 1U);
    b >>= 1;
  }
  return r;
}

std::size_t qubit_stride(int n, int qubit) { return std::size_t{1} << (n - 1 - qubit); }

kernels::Gate2 to_gate(const UnitaryMatrix& g) {
  if (g.rows() != 2 || g.cols() != 2) throw InvalidArgument("single-qubit gate must be 2x2");
  return kernels::Gate2{{g(0, 0), g(0, 1), g(1, 0), g(1, 1)}};
}

RotationAngles draw_angles(std::uint64_t map_key, std::uint64_t layer, std::uint64_t slot,
                           AngleMeasure measure) {
  const CounterRng rng(derive_stream(derive_stream(map_key, layer), slot));
  const double u0 = rng.uniform(0), u1 = rng.uniform(1), u2 = rng.uniform(2);
  RotationAngles a;
  if (measure == AngleMeasure::Haar) {
    a.theta = std::asin(std::sqrt(u0));
  } else {
    a.theta = kTwoPi * u0;
  }
  a.phi = kTwoPi * u1;
  a.psi = kTwoPi * u2;
  return a;
}

}  // namespace

double unitarity_deviation(const UnitaryMatrix& u) {
  if (u.rows() != u.cols()) throw InvalidArgument("matrix must be square");
  const UnitaryMatrix prod = u * u.adjoint();
  return (prod - UnitaryMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

int qubit_count_for_dimension(std::size_t dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw InvalidArgument("dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

RotationAngles RotationAngles::canonical() const {
  return {reduce_angle(theta), reduce_angle(phi), reduce_angle(psi)};
}

std::size_t Topology::edge_count() const {
  return kind == TopologyKind::Chain ? static_cast<std::size_t>(n - 1) : static_cast<std::size_t>(n);
}

std::pair<int, int> Topology::edge(std::size_t e) const {
  if (e >= edge_count()) throw InvalidArgument("edge index out of range");
  const int a = static_cast<int>(e);
  return {a, (a + 1) % n};
}

int Topology::center_edge() const {
  if (kind != TopologyKind::Chain) return -1;
  const auto edges = edge_count();
  return edges % 2 == 1 ? static_cast<int>(edges / 2) : -1;
}

CouplingSchedule CouplingSchedule::uniform(const Topology& topo, double angle) {
  return CouplingSchedule{std::vector<double>(topo.edge_count(), angle)};
}

std::vector<std::string> validate(const MapConfig& config) {
  std::vector<std::string> warnings;
  const auto& topo = config.topology;
  if (topo.n < 2) throw InvalidArgument("qubit count must be >= 2");
  if (topo.n > kMaxQubits) {
    throw CapacityError("qubit count " + std::to_string(topo.n) + " exceeds the cap of " +
                        std::to_string(kMaxQubits));
  }
  if (topo.kind == TopologyKind::Ring && topo.n < 3) throw InvalidArgument("a ring needs at least 3 qubits");
  if (config.couplings.angles.size() != topo.edge_count()) {
    throw InvalidArgument("coupling schedule has " + std::to_string(config.couplings.angles.size()) +
                          " entries, topology has " + std::to_string(topo.edge_count()) + " edges");
  }
  for (double c : config.couplings.angles) {
    if (!std::isfinite(c)) throw InvalidArgument("coupling angles must be finite");
  }
  if (config.iterations < 0) throw InvalidArgument("iteration count must be >= 0");
  const auto& rot = config.rotations;
  if (rot.mode == RotationMode::PerSpeciesPerIteration && (rot.species < 1 || rot.species > 3)) {
    throw InvalidArgument("species count must be 1, 2 or 3");
  }
  if (!rot.fixed_angles.empty()) {
    const auto need = independent_rotation_count(config);
    if (rot.fixed_angles.size() != need) {
      throw InvalidArgument("fixed_angles holds " + std::to_string(rot.fixed_angles.size()) +
                            " rotations, schedule needs " + std::to_string(need));
    }
    for (const auto& a : rot.fixed_angles) (void)a.canonical();
  }

  const auto& c = config.couplings.angles;
  const bool uniform = std::adjacent_find(c.begin(), c.end(), std::not_equal_to<>()) == c.end();
  if (topo.kind == TopologyKind::Chain && !uniform && std::equal(c.begin(), c.end(), c.rbegin())) {
    warnings.emplace_back(
        "coupling schedule is mirror symmetric (only the center edge or mirrored pairs differ); "
        "the mirror symmetry of the map is not broken");
  }
  if (rot.mode == RotationMode::PerSpeciesPerIteration && rot.species > 1 && topo.n % rot.species != 0) {
    warnings.emplace_back("qubit count is not a multiple of the species count");
  }
  return warnings;
}

std::size_t independent_rotation_count(const MapConfig& config) {
  const auto m1 = static_cast<std::size_t>(config.iterations) + 1;
  const auto n = static_cast<std::size_t>(config.topology.n);
  switch (config.rotations.mode) {
    case RotationMode::PerSpeciesPerIteration:
      return static_cast<std::size_t>(config.rotations.species) * m1;
    case RotationMode::PerQubitPerIteration:
      return n * m1;
    case RotationMode::PerQubitFixed:
      return n;
    case RotationMode::GlobalFixed:
      return 1;
  }
  return 0;
}

std::vector<int> species_pattern(int n, int species) {
  if (species < 1) throw InvalidArgument("species count must be positive");
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) out[static_cast<std::size_t>(q)] = q % species;
  return out;
}

RotationPlan plan_rotations(const MapConfig& config) {
  validate(config);
  const int n = config.topology.n;
  const auto m = static_cast<std::size_t>(config.iterations);
  const auto& rot = config.rotations;
  const auto nq = static_cast<std::size_t>(n);

  RotationPlan plan;
  plan.layers.assign(m + 1, std::vector<std::uint32_t>(nq, 0));
  const auto count = independent_rotation_count(config);
  plan.draws.reserve(count);

  // Slot layout per mode: draws are indexed (layer, slot) so the fixed and
  // random paths fill `draws` in the same order.
  auto emit = [&](std::size_t layer, std::size_t slot) {
    if (!rot.fixed_angles.empty()) {
      plan.draws.push_back(rot.fixed_angles[plan.draws.size()].canonical());
    } else {
      plan.draws.push_back(draw_angles(config.seed, layer, slot, rot.measure));
    }
  };

  switch (rot.mode) {
    case RotationMode::PerSpeciesPerIteration: {
      const auto k = static_cast<std::size_t>(rot.species);
      const auto pattern = species_pattern(n, rot.species);
      for (std::size_t i = 0; i <= m; ++i) {
        for (std::size_t s = 0; s < k; ++s) emit(i, s);
        for (std::size_t q = 0; q < nq; ++q) {
          plan.layers[i][q] = static_cast<std::uint32_t>(i * k + static_cast<std::size_t>(pattern[q]));
        }
      }
      break;
    }
    case RotationMode::PerQubitPerIteration:
      for (std::size_t i = 0; i <= m; ++i) {
        for (std::size_t q = 0; q < nq; ++q) {
          emit(i, q);
          plan.layers[i][q] = static_cast<std::uint32_t>(i * nq + q);
        }
      }
      break;
    case RotationMode::PerQubitFixed:
      for (std::size_t q = 0; q < nq; ++q) emit(0, q);
      for (auto& layer : plan.layers) std::iota(layer.begin(), layer.end(), 0U);
      break;
    case RotationMode::GlobalFixed:
      emit(0, 0);
      break;
  }
  return plan;
}

UnitaryMatrix su2_rotation(const RotationAngles& angles) {
  if (!std::isfinite(angles.theta) || !std::isfinite(angles.phi) || !std::isfinite(angles.psi)) {
    throw InvalidArgument("rotation angles must be finite");
  }
  const double c = std::cos(angles.theta);
  const double s = std::sin(angles.theta);
  UnitaryMatrix r(2, 2);
  r(0, 0) = std::polar(c, angles.phi);
  r(0, 1) = std::polar(s, angles.psi);
  r(1, 0) = -std::polar(s, -angles.psi);
  r(1, 1) = std::polar(c, -angles.phi);
  return r;
}

std::vector<Complex> nnc_diagonal(const Topology& topology, const CouplingSchedule& couplings) {
  if (topology.n < 2) throw InvalidArgument("qubit count must be >= 2");
  if (topology.kind == TopologyKind::Ring && topology.n < 3) throw InvalidArgument("a ring needs at least 3 qubits");
  if (couplings.angles.size() != topology.edge_count()) {
    throw InvalidArgument("coupling schedule length does not match the topology edge count");
  }
  const int n = topology.n;
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Complex> diag(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    double phase = 0.0;
    for (std::size_t e = 0; e < topology.edge_count(); ++e) {
      const auto [j, k] = topology.edge(e);
      const bool bj = (b >> (n - 1 - j)) & 1U;
      const bool bk = (b >> (n - 1 - k)) & 1U;
      phase += (bj == bk ? 1.0 : -1.0) * couplings.angles[e];
    }
    diag[b] = std::polar(1.0, phase);
  }
  return diag;
}

UnitaryMatrix nnc_unitary(const Topology& topology, const CouplingSchedule& couplings) {
  const auto diag = nnc_diagonal(topology, couplings);
  UnitaryMatrix u = UnitaryMatrix::Zero(static_cast<Eigen::Index>(diag.size()),
                                        static_cast<Eigen::Index>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) {
    u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
  }
  return u;
}

void apply_single_qubit(UnitaryMatrix& u, int n, int qubit, const UnitaryMatrix& gate) {
  if (u.rows() != (Eigen::Index{1} << n)) throw InvalidArgument("matrix dimension does not match qubit count");
  if (qubit < 0 || qubit >= n) throw InvalidArgument("qubit index out of range");
  kernels::active_kernels().apply_gate(u.data(), static_cast<std::size_t>(u.size()), qubit_stride(n, qubit),
                                       to_gate(gate));
}

void apply_single_qubit(StateVector& psi, int n, int qubit, const UnitaryMatrix& gate) {
  if (psi.size() != (Eigen::Index{1} << n)) throw InvalidArgument("state dimension does not match qubit count");
  if (qubit < 0 || qubit >= n) throw InvalidArgument("qubit index out of range");
  kernels::active_kernels().apply_gate(psi.data(), static_cast<std::size_t>(psi.size()), qubit_stride(n, qubit),
                                       to_gate(gate));
}

void apply_diagonal(UnitaryMatrix& u, std::span<const Complex> diag) {
  if (static_cast<Eigen::Index>(diag.size()) != u.rows()) throw InvalidArgument("diagonal length mismatch");
  kernels::active_kernels().apply_diagonal(u.data(), static_cast<std::size_t>(u.size()), diag.data(), diag.size());
}

UnitaryMatrix species_rotation_layer(int n, std::span<const int> assignment,
                                     std::span<const RotationAngles> per_species) {
  if (n < 1 || n > kMaxQubits) throw InvalidArgument("qubit count out of range");
  if (assignment.size() != static_cast<std::size_t>(n)) {
    throw InvalidArgument("species assignment must cover every qubit exactly once");
  }
  std::vector<UnitaryMatrix> gates;
  gates.reserve(per_species.size());
  for (const auto& a : per_species) gates.push_back(su2_rotation(a));
  const auto dim = Eigen::Index{1} << n;
  UnitaryMatrix u = UnitaryMatrix::Identity(dim, dim);
  for (int q = 0; q < n; ++q) {
    const int s = assignment[static_cast<std::size_t>(q)];
    if (s < 0 || static_cast<std::size_t>(s) >= gates.size()) {
      throw InvalidArgument("no rotation angles supplied for species " + std::to_string(s));
    }
    apply_single_qubit(u, n, q, gates[static_cast<std::size_t>(s)]);
  }
  return u;
}

UnitaryMatrix build_map(const MapConfig& config) {
  const RotationPlan plan = plan_rotations(config);
  const int n = config.topology.n;
  const auto dim = Eigen::Index{1} << n;
  const auto diag = nnc_diagonal(config.topology, config.couplings);

  std::vector<UnitaryMatrix> gates;
  gates.reserve(plan.draws.size());
  for (const auto& a : plan.draws) gates.push_back(su2_rotation(a));

  UnitaryMatrix u = UnitaryMatrix::Identity(dim, dim);
  auto apply_layer = [&](const std::vector<std::uint32_t>& layer) {
    for (int q = 0; q < n; ++q) apply_single_qubit(u, n, q, gates[layer[static_cast<std::size_t>(q)]]);
  };
  for (int i = 0; i < config.iterations; ++i) {
    apply_layer(plan.layers[static_cast<std::size_t>(i)]);
    apply_diagonal(u, diag);
  }
  apply_layer(plan.layers.back());
  return u;
}

UnitaryMatrix mirror_permutation(int n) {
  if (n < 2) throw InvalidArgument("mirror permutation needs n >= 2");
  if (n > kMaxQubits) throw CapacityError("qubit count exceeds the cap");
  const auto dim = std::size_t{1} << n;
  UnitaryMatrix p = UnitaryMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    p(static_cast<Eigen::Index>(bit_reverse(b, n)), static_cast<Eigen::Index>(b)) = 1.0;
  }
  return p;
}

std::size_t mirror_symmetric_dimension(int n) {
  if (n < 1) throw InvalidArgument("qubit count must be positive");
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t palindromes = std::size_t{1} << ((n + 1) / 2);
  return (dim + palindromes) / 2;
}

double mirror_commutator_norm(const UnitaryMatrix& u) {
  const int n = qubit_count_for_dimension(static_cast<std::size_t>(u.rows()));
  const auto dim = static_cast<std::size_t>(u.rows());
  std::vector<Eigen::Index> rev(dim);
  for (std::size_t b = 0; b < dim; ++b) rev[b] = static_cast<Eigen::Index>(bit_reverse(b, n));
  double worst = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const auto cj = static_cast<Eigen::Index>(j);
    for (std::size_t i = 0; i < dim; ++i) {
      const auto ci = static_cast<Eigen::Index>(i);
      // (U P)_{ij} = U_{i, rev j};  (P U)_{ij} = U_{rev i, j}
      worst = std::max(worst, std::abs(u(ci, rev[j]) - u(rev[i], cj)));
    }
  }
  return worst;
}

std::string_view to_string(TopologyKind kind) { return kind == TopologyKind::Chain ? "chain" : "ring"; }

std::string_view to_string(RotationMode mode) {
  switch (mode) {
    case RotationMode::PerSpeciesPerIteration: return "qca";
    case RotationMode::PerQubitPerIteration: return "circuit";
    case RotationMode::PerQubitFixed: return "repeat";
    case RotationMode::GlobalFixed: return "homogeneous";
  }
  return "qca";
}

std::string_view to_string(AngleMeasure measure) { return measure == AngleMeasure::Haar ? "haar" : "uniform"; }

TopologyKind topology_kind_from_string(std::string_view s) {
  if (s == "chain") return TopologyKind::Chain;
  if (s == "ring") return TopologyKind::Ring;
  throw InvalidArgument("unknown topology '" + std::string(s) + "' (expected chain or ring)");
}

RotationMode rotation_mode_from_string(std::string_view s) {
  if (s == "qca") return RotationMode::PerSpeciesPerIteration;
  if (s == "circuit") return RotationMode::PerQubitPerIteration;
  if (s == "repeat") return RotationMode::PerQubitFixed;
  if (s == "homogeneous") return RotationMode::GlobalFixed;
  throw InvalidArgument("unknown rotation mode '" + std::string(s) + "'");
}

AngleMeasure angle_measure_from_string(std::string_view s) {
  if (s == "haar") return AngleMeasure::Haar;
  if (s == "uniform") return AngleMeasure::Uniform;
  throw InvalidArgument("unknown angle measure '" + std::string(s) + "' (expected haar or uniform)");
}

}  // namespace qca
