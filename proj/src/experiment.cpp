#include "qca/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "qca/entanglement.hpp"
#include "qca/errors.hpp"
#include "qca/parallel.hpp"
#include "qca/rng.hpp"
#include "qca/spectral.hpp"

namespace qca {

using nlohmann::json;

namespace {

// Stream indices under the master seed for the non-map random inputs.
constexpr std::uint64_t kHaarReferenceStream = 0x48414152ULL;
constexpr std::uint64_t kFidelityStateStream = 0x46494445ULL;

constexpr double kMapUnitarityTolerance = 1e-8;

// Unfolded spacings and y values have mean exactly 1; drift means the spectrum is broken.
void check_unit_mean(double mean, const char* what) {
  if (!(std::abs(mean - 1.0) <= 1e-9)) {
    throw NumericError(std::string("mean ") + what + " is " + format_double(mean) + ", expected 1");
  }
}

// ---- strict JSON helpers ---------------------------------------------------

void reject_unknown_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view where) {
  if (!j.is_object()) throw InvalidArgument(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InvalidArgument("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
T get_field(const json& j, std::string_view key, std::string_view where) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) throw InvalidArgument("missing key '" + std::string(key) + "' in " + std::string(where));
  try {
    if constexpr (std::is_same_v<T, int>) {
      if (!it->is_number_integer()) throw InvalidArgument("");
    } else if constexpr (std::is_same_v<T, std::uint64_t> || std::is_same_v<T, std::size_t>) {
      if (!it->is_number_unsigned()) throw InvalidArgument("");
    } else if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw InvalidArgument("");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) throw InvalidArgument("");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!it->is_string()) throw InvalidArgument("");
    }
    return it->get<T>();
  } catch (const std::exception&) {
    throw InvalidArgument("key '" + std::string(key) + "' in " + std::string(where) + " has the wrong type");
  }
}

template <typename T>
T get_or(const json& j, std::string_view key, T fallback, std::string_view where) {
  return j.contains(std::string(key)) ? get_field<T>(j, key, where) : fallback;
}

json binning_to_json(const Binning& b) {
  return json{{"scale", b.scale == BinScale::Linear ? "linear" : "log"},
              {"lo", b.lo},
              {"hi", b.hi},
              {"width", b.width}};
}

Binning binning_from_json(const json& j, Binning fallback, std::string_view where) {
  reject_unknown_keys(j, {"scale", "lo", "hi", "width"}, where);
  Binning b = fallback;
  if (j.contains("scale")) {
    const auto s = get_field<std::string>(j, "scale", where);
    if (s == "linear") {
      b.scale = BinScale::Linear;
    } else if (s == "log") {
      b.scale = BinScale::Log;
    } else {
      throw InvalidArgument("bin scale must be 'linear' or 'log'");
    }
  }
  b.lo = get_or<double>(j, "lo", b.lo, where);
  b.hi = get_or<double>(j, "hi", b.hi, where);
  b.width = get_or<double>(j, "width", b.width, where);
  return b;
}

json map_to_json(const MapTemplate& m) {
  json j{{"qubits", m.qubits},
         {"topology", std::string(to_string(m.topology))},
         {"rotation_mode", std::string(to_string(m.mode))},
         {"species", m.species},
         {"angle_measure", std::string(to_string(m.measure))},
         {"iterations", m.iterations}};
  if (!m.couplings_pi.empty()) j["couplings"] = m.couplings_pi;
  if (!m.fixed_angles_pi.empty()) j["fixed_angles"] = m.fixed_angles_pi;
  return j;
}

MapTemplate map_from_json(const json& j) {
  constexpr std::string_view where = "map";
  reject_unknown_keys(j, {"qubits", "topology", "couplings", "rotation_mode", "species", "angle_measure",
                          "iterations", "fixed_angles"},
                      where);
  MapTemplate m;
  m.qubits = get_field<int>(j, "qubits", where);
  m.topology = topology_kind_from_string(get_or<std::string>(j, "topology", "chain", where));
  m.mode = rotation_mode_from_string(get_or<std::string>(j, "rotation_mode", "qca", where));
  m.species = get_or<int>(j, "species", 1, where);
  m.measure = angle_measure_from_string(get_or<std::string>(j, "angle_measure", "haar", where));
  m.iterations = get_field<int>(j, "iterations", where);
  if (j.contains("couplings")) {
    const auto& c = j["couplings"];
    if (!c.is_array()) throw InvalidArgument("map.couplings must be an array of numbers (units of pi)");
    for (const auto& v : c) {
      if (!v.is_number()) throw InvalidArgument("map.couplings must be an array of numbers (units of pi)");
      m.couplings_pi.push_back(v.get<double>());
    }
  }
  if (j.contains("fixed_angles")) {
    const auto& a = j["fixed_angles"];
    if (!a.is_array()) throw InvalidArgument("map.fixed_angles must be an array of [theta, phi, psi] triples");
    for (const auto& t : a) {
      if (!t.is_array() || t.size() != 3 || !t[0].is_number() || !t[1].is_number() || !t[2].is_number()) {
        throw InvalidArgument("map.fixed_angles must be an array of [theta, phi, psi] triples");
      }
      m.fixed_angles_pi.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
    }
  }
  return m;
}

// ---- running ----------------------------------------------------------------

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::vector<double> concat(const std::vector<std::vector<double>>& parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<double> out;
  out.reserve(total);
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

void write_lines(const std::filesystem::path& path, const std::vector<double>& v) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (double x : v) out << format_double(x) << '\n';
}

json gof_to_json(const GofEntry& g) {
  json j{{"statistic", g.statistic},
         {"reference", g.reference},
         {"ks_distance", g.result.statistic},
         {"critical_value", g.result.critical_value},
         {"alpha", g.result.alpha},
         {"sample_size", g.result.sample_size},
         {"reject", g.result.reject}};
  if (g.reference != "Q_haar" && has_block_fractions(ref_kind_from_string(g.reference))) {
    j["g1"] = g.g1;
    j["g2"] = g.g2;
  }
  return j;
}

void write_curve(const std::filesystem::path& path, const ReferencePdf& ref, const ExperimentSpec& spec) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "x,density\n";
  constexpr int kPoints = 400;
  if (ref.variable() == RefVariable::Spacing) {
    const double hi = spec.spacing_bins.hi;
    for (int i = 0; i <= kPoints; ++i) {
      const double x = hi * i / kPoints;
      out << format_double(x) << ',' << format_double(ref.density(x)) << '\n';
    }
  } else {
    const double llo = std::log10(spec.eigvec_bins.lo);
    const double lhi = std::log10(spec.eigvec_bins.hi);
    for (int i = 0; i <= kPoints; ++i) {
      const double x = std::pow(10.0, llo + (lhi - llo) * i / kPoints);
      out << format_double(x) << ',' << format_double(ref.density(x)) << '\n';
    }
  }
}

}  // namespace

// ---- spec -------------------------------------------------------------------

std::string_view to_string(Statistic s) {
  switch (s) {
    case Statistic::Spacings: return "spacings";
    case Statistic::EigvecElements: return "eigvec_elements";
    case Statistic::QDistribution: return "q_distribution";
    case Statistic::FidelityDecay: return "fidelity_decay";
    case Statistic::MirrorCheck: return "mirror_check";
  }
  return "spacings";
}

Statistic statistic_from_string(std::string_view s) {
  for (Statistic st : {Statistic::Spacings, Statistic::EigvecElements, Statistic::QDistribution,
                       Statistic::FidelityDecay, Statistic::MirrorCheck}) {
    if (to_string(st) == s) return st;
  }
  throw InvalidArgument("unknown statistic '" + std::string(s) + "'");
}

MapConfig MapTemplate::to_config(std::uint64_t seed, int iterations_override) const {
  MapConfig c;
  c.topology = Topology{topology, qubits};
  if (couplings_pi.empty()) {
    if (qubits >= 2) c.couplings = CouplingSchedule::uniform(c.topology);
  } else {
    for (double v : couplings_pi) c.couplings.angles.push_back(v * kPi);
  }
  c.rotations.mode = mode;
  c.rotations.species = species;
  c.rotations.measure = measure;
  for (const auto& a : fixed_angles_pi) c.rotations.fixed_angles.push_back({a[0] * kPi, a[1] * kPi, a[2] * kPi});
  c.iterations = iterations_override >= 0 ? iterations_override : iterations;
  c.seed = seed;
  return c;
}

ReferencePdf ReferenceSpec::make(int qubits) const {
  if (!has_block_fractions(kind)) return ReferencePdf(kind);
  double a = 0.0, b = 0.0;
  if (g1 && g2) {
    a = *g1;
    b = *g2;
  } else if (g1 || g2) {
    a = g1 ? *g1 : 1.0 - *g2;
    b = 1.0 - a;
  } else {
    const double dim = std::ldexp(1.0, qubits);
    b = static_cast<double>(mirror_symmetric_dimension(qubits)) / dim;
    a = 1.0 - b;
  }
  return ReferencePdf(kind, a, b);
}

bool ExperimentSpec::wants(Statistic s) const {
  return std::find(statistics.begin(), statistics.end(), s) != statistics.end();
}

std::vector<std::string> validate(const ExperimentSpec& spec) {
  if (spec.ensemble_size < 1) throw InvalidArgument("ensemble_size must be >= 1");
  if (spec.alpha != 0.01 && spec.alpha != 0.05) throw InvalidArgument("alpha must be 0.01 or 0.05");
  (void)spec.spacing_bins.edges();
  (void)spec.eigvec_bins.edges();
  (void)spec.q_bins.edges();
  std::set<Statistic> seen_stats(spec.statistics.begin(), spec.statistics.end());
  if (seen_stats.size() != spec.statistics.size()) throw InvalidArgument("statistics list has duplicates");
  std::set<RefKind> seen_refs;
  for (const auto& r : spec.references) {
    if (!seen_refs.insert(r.kind).second) throw InvalidArgument("references list has duplicates");
    (void)r.make(spec.map.qubits);
  }
  if (spec.wants(Statistic::FidelityDecay)) {
    if (spec.fidelity.steps < 1) throw InvalidArgument("fidelity.steps must be >= 1");
    if (!std::isfinite(spec.fidelity.epsilon)) throw InvalidArgument("fidelity.epsilon must be finite");
  }
  std::vector<std::string> warnings;
  std::vector<int> ms = spec.iteration_sweep.empty() ? std::vector<int>{spec.map.iterations} : spec.iteration_sweep;
  if (std::set<int>(ms.begin(), ms.end()).size() != ms.size()) throw InvalidArgument("iteration_sweep has duplicates");
  for (int m : ms) {
    auto w = validate(spec.map.to_config(spec.seed, m));
    for (auto& s : w) {
      if (std::find(warnings.begin(), warnings.end(), s) == warnings.end()) warnings.push_back(std::move(s));
    }
  }
  return warnings;
}

json to_json(const ExperimentSpec& spec) {
  json refs = json::array();
  for (const auto& r : spec.references) {
    json e{{"name", std::string(to_string(r.kind))}};
    if (r.g1) e["g1"] = *r.g1;
    if (r.g2) e["g2"] = *r.g2;
    refs.push_back(e);
  }
  json stats = json::array();
  for (auto s : spec.statistics) stats.push_back(std::string(to_string(s)));
  json j{{"name", spec.name},
         {"map", map_to_json(spec.map)},
         {"iteration_sweep", spec.iteration_sweep},
         {"ensemble_size", spec.ensemble_size},
         {"statistics", stats},
         {"references", refs},
         {"alpha", spec.alpha},
         {"binning",
          {{"spacings", binning_to_json(spec.spacing_bins)},
           {"eigvec_elements", binning_to_json(spec.eigvec_bins)},
           {"q_distribution", binning_to_json(spec.q_bins)}}},
         {"fidelity",
          {{"epsilon", spec.fidelity.epsilon}, {"steps", spec.fidelity.steps}, {"fit_floor", spec.fidelity.fit_floor}}},
         {"raw_samples", spec.raw_samples},
         {"seed", spec.seed}};
  if (!spec.output.empty()) j["output"] = spec.output;
  return j;
}

ExperimentSpec spec_from_json(const json& j) {
  constexpr std::string_view where = "spec";
  reject_unknown_keys(j,
                      {"name", "map", "iteration_sweep", "ensemble_size", "statistics", "references", "alpha",
                       "binning", "fidelity", "raw_samples", "seed", "output", "$schema"},
                      where);
  ExperimentSpec s;
  s.name = get_or<std::string>(j, "name", "", where);
  if (!j.contains("map")) throw InvalidArgument("missing key 'map' in spec");
  s.map = map_from_json(j["map"]);
  if (j.contains("iteration_sweep")) {
    const auto& sw = j["iteration_sweep"];
    if (!sw.is_array()) throw InvalidArgument("iteration_sweep must be an array of integers");
    for (const auto& v : sw) {
      if (!v.is_number_integer()) throw InvalidArgument("iteration_sweep must be an array of integers");
      s.iteration_sweep.push_back(v.get<int>());
    }
  }
  s.ensemble_size = get_field<std::size_t>(j, "ensemble_size", where);
  if (j.contains("statistics")) {
    if (!j["statistics"].is_array()) throw InvalidArgument("statistics must be an array of names");
    for (const auto& v : j["statistics"]) {
      if (!v.is_string()) throw InvalidArgument("statistics must be an array of names");
      s.statistics.push_back(statistic_from_string(v.get<std::string>()));
    }
  }
  if (j.contains("references")) {
    if (!j["references"].is_array()) throw InvalidArgument("references must be an array");
    for (const auto& r : j["references"]) {
      reject_unknown_keys(r, {"name", "g1", "g2"}, "references[]");
      ReferenceSpec rs;
      rs.kind = ref_kind_from_string(get_field<std::string>(r, "name", "references[]"));
      if (r.contains("g1")) rs.g1 = get_field<double>(r, "g1", "references[]");
      if (r.contains("g2")) rs.g2 = get_field<double>(r, "g2", "references[]");
      if ((rs.g1 || rs.g2) && !has_block_fractions(rs.kind)) {
        throw InvalidArgument("reference " + std::string(to_string(rs.kind)) + " takes no block fractions");
      }
      s.references.push_back(rs);
    }
  }
  s.alpha = get_or<double>(j, "alpha", 0.01, where);
  if (j.contains("binning")) {
    const auto& b = j["binning"];
    reject_unknown_keys(b, {"spacings", "eigvec_elements", "q_distribution"}, "binning");
    if (b.contains("spacings")) s.spacing_bins = binning_from_json(b["spacings"], s.spacing_bins, "binning.spacings");
    if (b.contains("eigvec_elements")) {
      s.eigvec_bins = binning_from_json(b["eigvec_elements"], s.eigvec_bins, "binning.eigvec_elements");
    }
    if (b.contains("q_distribution")) s.q_bins = binning_from_json(b["q_distribution"], s.q_bins, "binning.q_distribution");
  }
  if (j.contains("fidelity")) {
    const auto& f = j["fidelity"];
    reject_unknown_keys(f, {"epsilon", "steps", "fit_floor"}, "fidelity");
    s.fidelity.epsilon = get_or<double>(f, "epsilon", s.fidelity.epsilon, "fidelity");
    s.fidelity.steps = get_or<int>(f, "steps", s.fidelity.steps, "fidelity");
    s.fidelity.fit_floor = get_or<double>(f, "fit_floor", s.fidelity.fit_floor, "fidelity");
  }
  s.raw_samples = get_or<bool>(j, "raw_samples", false, where);
  s.seed = get_or<std::uint64_t>(j, "seed", 1, where);
  s.output = get_or<std::string>(j, "output", "", where);
  return s;
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open spec file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("spec file " + path.string() + " is not valid JSON: " + e.what());
  }
  return spec_from_json(j);
}

// ---- results ----------------------------------------------------------------

const GofEntry* RunResult::find_gof(std::string_view statistic, std::string_view reference) const {
  for (const auto& g : gof) {
    if (g.statistic == statistic && g.reference == reference) return &g;
  }
  return nullptr;
}

ResultBundle run_experiment(const ExperimentSpec& spec, unsigned threads) {
  validate(spec);
  const auto start = std::chrono::steady_clock::now();

  const int n = spec.map.qubits;
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t members = spec.ensemble_size;
  std::vector<ReferencePdf> refs;
  refs.reserve(spec.references.size());
  for (const auto& r : spec.references) refs.push_back(r.make(n));

  const bool spectral = spec.wants(Statistic::Spacings) || spec.wants(Statistic::EigvecElements);
  const bool want_q = spec.wants(Statistic::QDistribution);
  const bool want_fid = spec.wants(Statistic::FidelityDecay);
  const bool want_mirror = spec.wants(Statistic::MirrorCheck);
  const UnitaryMatrix perturbation = want_fid ? sigma_z_perturbation(n, spec.fidelity.epsilon) : UnitaryMatrix();

  ResultBundle bundle;
  bundle.spec = spec;
  const std::vector<int> ms =
      spec.iteration_sweep.empty() ? std::vector<int>{spec.map.iterations} : spec.iteration_sweep;

  for (int m : ms) {
    RunResult run;
    run.iterations = m;
    std::vector<std::vector<double>> sp(members), ys(members), qs(members), fid(members);
    std::vector<double> r2(members, 0.0), mirror(members, 0.0);

    parallel_for(members, threads, [&](std::size_t i) {
      const std::uint64_t seed = member_seed(spec.seed, i);
      const UnitaryMatrix u = build_map(spec.map.to_config(seed, m));
      if (!(unitarity_deviation(u) <= kMapUnitarityTolerance)) {
        throw NumericError("map " + std::to_string(i) + " lost unitarity during construction");
      }
      if (spectral) {
        SpectralData d = analyze_spectrum(u);
        if (spec.wants(Statistic::Spacings)) sp[i] = std::move(d.spacings);
        if (spec.wants(Statistic::EigvecElements)) ys[i] = std::move(d.eigvec_elements);
      }
      if (want_mirror) mirror[i] = mirror_commutator_norm(u);
      if (want_q) qs[i] = basis_state_q(u);
      if (want_fid) {
        const StateVector psi = haar_state(dim, derive_stream(seed, kFidelityStateStream));
        fid[i] = fidelity_decay(u, perturbation, psi, spec.fidelity.steps);
        r2[i] = fit_log_linear(fid[i], spec.fidelity.fit_floor).r_squared;
      }
    });

    auto finish = [&](std::vector<std::vector<double>>& parts, const Binning& bins) {
      SampleSet set;
      set.samples = concat(parts);
      set.histogram = make_histogram(bins, set.samples);
      parts.clear();
      return set;
    };
    auto run_gof = [&](const std::string& stat, const std::vector<double>& samples, RefVariable variable) {
      if (samples.size() < 50) return;
      for (const auto& ref : refs) {
        if (ref.variable() != variable) continue;
        run.gof.push_back(GofEntry{stat, std::string(ref.name()), ref.g1(), ref.g2(), ks_test(samples, ref, spec.alpha)});
      }
    };

    if (spec.wants(Statistic::Spacings)) {
      run.spacings = finish(sp, spec.spacing_bins);
      run.mean_spacing = mean_of(run.spacings->samples);
      check_unit_mean(run.mean_spacing, "spacing");
      run_gof("spacings", run.spacings->samples, RefVariable::Spacing);
    }
    if (spec.wants(Statistic::EigvecElements)) {
      run.eigvec_elements = finish(ys, spec.eigvec_bins);
      run.mean_eigvec_element = mean_of(run.eigvec_elements->samples);
      check_unit_mean(run.mean_eigvec_element, "eigenvector element");
      run_gof("eigvec_elements", run.eigvec_elements->samples, RefVariable::EigvecElement);
    }
    if (want_q) {
      run.q_values = finish(qs, spec.q_bins);
      SampleSet haar;
      haar.samples = haar_q_reference(n, run.q_values->samples.size(), derive_stream(spec.seed, kHaarReferenceStream));
      haar.histogram = make_histogram(spec.q_bins, haar.samples);
      if (run.q_values->samples.size() >= 50) {
        run.gof.push_back(GofEntry{"q_distribution", "Q_haar", 0.0, 0.0,
                                   ks_two_sample(run.q_values->samples, haar.samples, spec.alpha)});
      }
      run.q_haar = std::move(haar);
    }
    if (want_fid) {
      run.fidelity_mean.assign(static_cast<std::size_t>(spec.fidelity.steps), 0.0);
      for (const auto& f : fid) {
        for (std::size_t t = 0; t < f.size(); ++t) run.fidelity_mean[t] += f[t] / static_cast<double>(members);
      }
      run.fidelity_r_squared = std::move(r2);
    }
    if (want_mirror) run.mirror_norms = std::move(mirror);
    bundle.runs.push_back(std::move(run));
  }

  bundle.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return bundle;
}

json metadata_json(const ResultBundle& bundle) {
  json runs = json::array();
  for (const auto& run : bundle.runs) {
    json r{{"iterations", run.iterations}};
    json counts = json::object();
    if (run.spacings) {
      counts["spacings"] = run.spacings->samples.size();
      r["mean_spacing"] = run.mean_spacing;
    }
    if (run.eigvec_elements) {
      counts["eigvec_elements"] = run.eigvec_elements->samples.size();
      r["mean_eigvec_element"] = run.mean_eigvec_element;
    }
    if (run.q_values) counts["q_distribution"] = run.q_values->samples.size();
    r["sample_counts"] = counts;
    json gof = json::array();
    for (const auto& g : run.gof) gof.push_back(gof_to_json(g));
    r["gof"] = gof;
    if (!run.fidelity_r_squared.empty()) {
      r["fidelity"] = {{"mean_r_squared", mean_of(run.fidelity_r_squared)},
                       {"min_r_squared", *std::min_element(run.fidelity_r_squared.begin(),
                                                           run.fidelity_r_squared.end())}};
    }
    if (!run.mirror_norms.empty()) {
      r["mirror"] = {{"max_commutator_norm", *std::max_element(run.mirror_norms.begin(), run.mirror_norms.end())},
                     {"min_commutator_norm", *std::min_element(run.mirror_norms.begin(), run.mirror_norms.end())}};
    }
    runs.push_back(r);
  }
  return json{{"version", std::string(kVersion)},
              {"spec", to_json(bundle.spec)},
              {"seed", bundle.spec.seed},
              {"wall_time_seconds", bundle.wall_time_seconds},
              {"runs", runs}};
}

void write_bundle(const ResultBundle& bundle, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto& spec = bundle.spec;
  const bool sweep = !spec.iteration_sweep.empty();
  for (const auto& run : bundle.runs) {
    const fs::path rd = sweep ? dir / ("m" + std::to_string(run.iterations)) : dir;
    fs::create_directories(rd);
    auto emit = [&](const std::optional<SampleSet>& set, const std::string& stem) {
      if (!set) return;
      write_histogram_csv(rd / (stem + ".csv"), set->histogram);
      if (spec.raw_samples) write_lines(rd / (stem + "_raw.csv"), set->samples);
    };
    emit(run.spacings, "spacings");
    emit(run.eigvec_elements, "eigvec_elements");
    emit(run.q_values, "q_distribution");
    emit(run.q_haar, "q_haar");
    if (!run.fidelity_mean.empty()) {
      std::ofstream out(rd / "fidelity_decay.csv");
      out << "t,fidelity\n";
      for (std::size_t t = 0; t < run.fidelity_mean.size(); ++t) {
        out << (t + 1) << ',' << format_double(run.fidelity_mean[t]) << '\n';
      }
    }
    if (!run.mirror_norms.empty()) {
      std::ofstream out(rd / "mirror_check.csv");
      out << "map_index,commutator_norm\n";
      for (std::size_t i = 0; i < run.mirror_norms.size(); ++i) {
        out << i << ',' << format_double(run.mirror_norms[i]) << '\n';
      }
    }
  }
  for (const auto& r : spec.references) {
    const ReferencePdf ref = r.make(spec.map.qubits);
    write_curve(dir / ("curve_" + std::string(ref.name()) + ".csv"), ref, spec);
  }
  std::ofstream meta(dir / "metadata.json");
  if (!meta) throw std::runtime_error("cannot write " + (dir / "metadata.json").string());
  meta << metadata_json(bundle).dump(2) << '\n';
}

}  // namespace qca
