#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qca/types.hpp"

namespace qca {

/// Largest qubit count build_map accepts (N = 4096, 256 MiB per matrix).
inline constexpr int kMaxQubits = 12;

/// Euler angles of one SU(2) rotation, radians.
struct RotationAngles {
  double theta = 0.0;
  double phi = 0.0;
  double psi = 0.0;

  /// Angles reduced to [0, 2pi); throws InvalidArgument for non-finite input.
  RotationAngles canonical() const;

  friend bool operator==(const RotationAngles&, const RotationAngles&) = default;
};

enum class TopologyKind { Chain, Ring };

struct Topology {
  TopologyKind kind = TopologyKind::Chain;
  int n = 2;

  std::size_t edge_count() const;
  /// Qubits (0-based, qubit 0 is the most significant bit) joined by edge `e`.
  std::pair<int, int> edge(std::size_t e) const;
  /// Index of the middle edge of an odd-edge chain, or -1 when there is none.
  int center_edge() const;

  friend bool operator==(const Topology&, const Topology&) = default;
};

/// Per-edge coupling angles in radians.
struct CouplingSchedule {
  std::vector<double> angles;

  static CouplingSchedule uniform(const Topology& topo, double angle = kPi / 4.0);

  friend bool operator==(const CouplingSchedule&, const CouplingSchedule&) = default;
};

enum class RotationMode {
  PerSpeciesPerIteration,  // QCA: k independent rotations per layer
  PerQubitPerIteration,    // circuit model
  PerQubitFixed,           // repeat map
  GlobalFixed,             // homogeneous map
};

enum class AngleMeasure {
  Haar,     // phi, psi uniform on [0, 2pi), sin^2(theta) uniform on [0, 1]
  Uniform,  // all three uniform on [0, 2pi)
};

struct RotationSchedule {
  RotationMode mode = RotationMode::PerSpeciesPerIteration;
  int species = 1;
  AngleMeasure measure = AngleMeasure::Haar;
  /// When non-empty, replaces the random draws. Must hold exactly
  /// independent_rotation_count() triples, in draw order.
  std::vector<RotationAngles> fixed_angles;

  friend bool operator==(const RotationSchedule&, const RotationSchedule&) = default;
};

struct MapConfig {
  Topology topology;
  CouplingSchedule couplings;
  RotationSchedule rotations;
  int iterations = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const MapConfig&, const MapConfig&) = default;
};

/// Throws InvalidArgument (or CapacityError for n > kMaxQubits) when the
/// config is unusable. Returns non-fatal warnings, e.g. an asymmetric-looking
/// coupling schedule that is still mirror symmetric.
std::vector<std::string> validate(const MapConfig& config);

/// Number of independent rotation triples the schedule draws:
/// QCA k(m+1), circuit n(m+1), repeat n, homogeneous 1.
std::size_t independent_rotation_count(const MapConfig& config);

/// Species index of every qubit: periodic ABAB... / ABCABC... starting at qubit 0.
std::vector<int> species_pattern(int n, int species);

/// Rotation draws and their placement. layers has m + 1 entries (the last is
/// the final rotation layer); layers[i][q] indexes into `draws`.
struct RotationPlan {
  std::vector<RotationAngles> draws;
  std::vector<std::vector<std::uint32_t>> layers;
};

RotationPlan plan_rotations(const MapConfig& config);

/// 2x2 SU(2) matrix [[e^{i phi} cos t, e^{i psi} sin t], [-e^{-i psi} sin t, e^{-i phi} cos t]].
UnitaryMatrix su2_rotation(const RotationAngles& angles);

/// Diagonal of the coupling unitary: entry b is exp(i sum_e c_e z_j(b) z_k(b)).
std::vector<Complex> nnc_diagonal(const Topology& topology, const CouplingSchedule& couplings);
UnitaryMatrix nnc_unitary(const Topology& topology, const CouplingSchedule& couplings);

/// Tensor product assigning each qubit the rotation of its species.
UnitaryMatrix species_rotation_layer(int n, std::span<const int> assignment,
                                     std::span<const RotationAngles> per_species);

/// U = R_final * prod_{i=m..1} (U_nnc * R_i); iteration 1 acts first.
UnitaryMatrix build_map(const MapConfig& config);

/// Bit-reversal permutation of the computational basis.
UnitaryMatrix mirror_permutation(int n);

/// Dimension of the +1 eigenspace of the mirror permutation, (2^n + 2^ceil(n/2)) / 2.
std::size_t mirror_symmetric_dimension(int n);

/// max |U P - P U| for the mirror permutation P, without forming P.
double mirror_commutator_norm(const UnitaryMatrix& u);

/// Applies a one-qubit gate in place to every column of `u` (left multiplication).
void apply_single_qubit(UnitaryMatrix& u, int n, int qubit, const UnitaryMatrix& gate);

/// Applies a one-qubit gate in place to a state vector.
void apply_single_qubit(StateVector& psi, int n, int qubit, const UnitaryMatrix& gate);

/// Left-multiplies every column of `u` by diag(diag).
void apply_diagonal(UnitaryMatrix& u, std::span<const Complex> diag);

std::string_view to_string(TopologyKind kind);
std::string_view to_string(RotationMode mode);
std::string_view to_string(AngleMeasure measure);
TopologyKind topology_kind_from_string(std::string_view s);
RotationMode rotation_mode_from_string(std::string_view s);
AngleMeasure angle_measure_from_string(std::string_view s);

}  // namespace qca
