#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "qca/operators.hpp"
#include "qca/refdist.hpp"

namespace qca {

inline constexpr std::string_view kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Histograms

enum class BinScale { Linear, Log };

/// Linear bins have `width` in x; log bins have `width` in decades.
struct Binning {
  BinScale scale = BinScale::Linear;
  double lo = 0.0;
  double hi = 1.0;
  double width = 0.1;

  std::vector<double> edges() const;
  friend bool operator==(const Binning&, const Binning&) = default;
};

/// Counts over [lo, hi] plus underflow (< lo) and overflow (> hi) so that the
/// total always equals the number of samples. The last in-range bin is closed.
struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t underflow = 0;
  std::uint64_t overflow = 0;

  std::uint64_t total() const;
};

Histogram make_histogram(const Binning& binning, std::span<const double> samples);

/// `bin_left,bin_right,count`; underflow/overflow rows use -inf/inf edges.
void write_histogram_csv(const std::filesystem::path& path, const Histogram& h);

/// Formats with 17 significant digits.
std::string format_double(double x);

// ---------------------------------------------------------------------------
// Experiment specification

enum class Statistic { Spacings, EigvecElements, QDistribution, FidelityDecay, MirrorCheck };

std::string_view to_string(Statistic s);
Statistic statistic_from_string(std::string_view s);

/// Map family template. Angles are in units of pi, as written in spec files.
struct MapTemplate {
  int qubits = 8;
  TopologyKind topology = TopologyKind::Chain;
  std::vector<double> couplings_pi;  // empty: every edge 1/4
  RotationMode mode = RotationMode::PerSpeciesPerIteration;
  int species = 1;
  AngleMeasure measure = AngleMeasure::Haar;
  int iterations = 40;
  std::vector<std::array<double, 3>> fixed_angles_pi;

  MapConfig to_config(std::uint64_t seed, int iterations_override = -1) const;
  friend bool operator==(const MapTemplate&, const MapTemplate&) = default;
};

struct ReferenceSpec {
  RefKind kind = RefKind::CueS;
  std::optional<double> g1;
  std::optional<double> g2;

  /// Missing block fractions default to the mirror-symmetry split for `qubits`.
  ReferencePdf make(int qubits) const;
  friend bool operator==(const ReferenceSpec&, const ReferenceSpec&) = default;
};

struct FidelitySettings {
  double epsilon = 0.05;
  int steps = 200;
  double fit_floor = 0.1;
  friend bool operator==(const FidelitySettings&, const FidelitySettings&) = default;
};

struct ExperimentSpec {
  std::string name;
  MapTemplate map;
  std::vector<int> iteration_sweep;  // empty: single run at map.iterations
  std::size_t ensemble_size = 1;
  std::vector<Statistic> statistics;
  std::vector<ReferenceSpec> references;
  double alpha = 0.01;
  Binning spacing_bins{BinScale::Linear, 0.0, 4.0, 0.1};
  Binning eigvec_bins{BinScale::Log, 1e-6, 20.0, 0.1};
  Binning q_bins{BinScale::Linear, 0.0, 1.0, 0.02};
  FidelitySettings fidelity;
  bool raw_samples = false;
  std::uint64_t seed = 1;
  std::string output;

  bool wants(Statistic s) const;
  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

/// Throws InvalidArgument on any inconsistency (including the map config).
/// Returns warnings from the map validator.
std::vector<std::string> validate(const ExperimentSpec& spec);

nlohmann::json to_json(const ExperimentSpec& spec);
/// Strict parser: unknown keys and malformed values raise InvalidArgument.
ExperimentSpec spec_from_json(const nlohmann::json& j);
ExperimentSpec load_spec(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Results

struct SampleSet {
  std::vector<double> samples;
  Histogram histogram;
};

struct GofEntry {
  std::string statistic;
  std::string reference;
  double g1 = 0.0;
  double g2 = 0.0;
  GofResult result;
};

struct RunResult {
  int iterations = 0;
  std::optional<SampleSet> spacings;
  std::optional<SampleSet> eigvec_elements;
  std::optional<SampleSet> q_values;
  std::optional<SampleSet> q_haar;
  std::vector<GofEntry> gof;
  std::vector<double> fidelity_mean;       // t = 1..steps, averaged over members
  std::vector<double> fidelity_r_squared;  // one per member
  std::vector<double> mirror_norms;        // one per member
  double mean_spacing = 0.0;
  double mean_eigvec_element = 0.0;

  const GofEntry* find_gof(std::string_view statistic, std::string_view reference) const;
};

struct ResultBundle {
  ExperimentSpec spec;
  std::vector<RunResult> runs;
  double wall_time_seconds = 0.0;
};

/// Runs every requested statistic; deterministic for a given spec regardless
/// of `threads` (0 = hardware concurrency).
ResultBundle run_experiment(const ExperimentSpec& spec, unsigned threads = 0);

/// Writes metadata.json, histogram CSVs, curve tables and optional raw files.
/// Sweeps write one `m<iterations>/` subdirectory per run.
void write_bundle(const ResultBundle& bundle, const std::filesystem::path& dir);

nlohmann::json metadata_json(const ResultBundle& bundle);

// ---------------------------------------------------------------------------
// Presets

struct Preset {
  std::string name;
  std::string description;
  ExperimentSpec spec;
};

const std::vector<Preset>& presets();
const Preset& find_preset(std::string_view name);

}  // namespace qca
