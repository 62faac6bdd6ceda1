#include <algorithm>

#include "qca/errors.hpp"
#include "qca/experiment.hpp"

namespace qca {

namespace {

constexpr int kQubits = 8;
constexpr int kIterations = 40;
constexpr std::size_t kSpectralEnsemble = 100;
constexpr std::size_t kQEnsemble = 500;

ReferenceSpec ref(RefKind kind) { return ReferenceSpec{kind, std::nullopt, std::nullopt}; }

ReferenceSpec mirror_ref(RefKind kind) { return ReferenceSpec{kind, 15.0 / 32.0, 17.0 / 32.0}; }

ExperimentSpec base(std::string name, RotationMode mode, int species) {
  ExperimentSpec s;
  s.name = std::move(name);
  s.map.qubits = kQubits;
  s.map.mode = mode;
  s.map.species = species;
  s.map.iterations = kIterations;
  return s;
}

ExperimentSpec spectral(std::string name, RotationMode mode, int species) {
  ExperimentSpec s = base(std::move(name), mode, species);
  s.ensemble_size = kSpectralEnsemble;
  s.statistics = {Statistic::Spacings, Statistic::EigvecElements, Statistic::MirrorCheck};
  return s;
}

ExperimentSpec q_sweep(std::string name, int species) {
  ExperimentSpec s = base(std::move(name), RotationMode::PerSpeciesPerIteration, species);
  s.ensemble_size = kQEnsemble;
  s.iteration_sweep = {16, 24, 32, 40};
  s.statistics = {Statistic::QDistribution};
  return s;
}

// Chain couplings, units of pi: all 1/4 except edge 1 (qubits 2-3), which is not the center edge.
std::vector<double> chain_with_one_pi_over_5() {
  std::vector<double> c(kQubits - 1, 0.25);
  c[1] = 0.2;
  return c;
}

std::vector<Preset> make_presets() {
  std::vector<Preset> out;

  out.push_back({"fig1", "k=1 chain QCA, Q distribution for m in {16,24,32,40}, 500 maps per m, vs Haar states",
                 q_sweep("fig1", 1)});

  {
    ExperimentSpec s = spectral("fig2", RotationMode::PerSpeciesPerIteration, 1);
    s.statistics.push_back(Statistic::FidelityDecay);
    s.references = {ref(RefKind::CueS), ref(RefKind::PoissonS), mirror_ref(RefKind::Cue2S),
                    ref(RefKind::Cue2SEqual), ref(RefKind::CueY)};
    out.push_back({"fig2", "k=1 chain QCA, m=40, 100 maps: spacings vs CUE / Poisson / mirror-symmetric CUE, "
                           "eigenvector elements vs CUE, mirror check, fidelity decay",
                   s});
  }

  out.push_back({"fig3", "k=2 chain QCA, Q distribution for m in {16,24,32,40}, 500 maps per m, vs Haar states",
                 q_sweep("fig3", 2)});

  {
    ExperimentSpec s = spectral("fig4", RotationMode::PerSpeciesPerIteration, 2);
    s.references = {ref(RefKind::CueS), ref(RefKind::PoissonS), ref(RefKind::CueY)};
    out.push_back({"fig4", "k=2 chain QCA, m=40, 100 maps: spacings and eigenvector elements vs CUE", s});
  }

  {
    ExperimentSpec s = spectral("chain-asym", RotationMode::PerSpeciesPerIteration, 1);
    s.map.couplings_pi = chain_with_one_pi_over_5();
    s.references = {ref(RefKind::CueS), ref(RefKind::PoissonS), ref(RefKind::CueY)};
    out.push_back({"chain-asym", "k=1 chain QCA with one non-center coupling pi/5, m=40, 100 maps", s});
  }

  {
    ExperimentSpec s = spectral("fig5ring", RotationMode::PerSpeciesPerIteration, 1);
    s.map.topology = TopologyKind::Ring;
    s.map.couplings_pi.assign(kQubits, 0.25);
    s.map.couplings_pi[0] = 1.0 / 5.0;
    s.map.couplings_pi[3] = 1.0 / 4.5;
    s.references = {ref(RefKind::CueS), ref(RefKind::PoissonS), ref(RefKind::CueY)};
    out.push_back({"fig5ring", "k=1 QCA ring, m=40, 100 maps; all couplings pi/4 except pi/5 (edge 1-2) and "
                               "pi/4.5 (edge 4-5)",
                   s});
  }

  {
    ExperimentSpec s = base("ring-sym-q", RotationMode::PerSpeciesPerIteration, 1);
    s.map.topology = TopologyKind::Ring;
    s.ensemble_size = kQEnsemble;
    s.iteration_sweep = {40, 80};
    s.statistics = {Statistic::QDistribution};
    out.push_back({"ring-sym-q", "k=1 QCA ring with uniform pi/4 couplings, Q distribution at m=40 and m=80", s});
  }

  {
    ExperimentSpec s = spectral("fig5repeat", RotationMode::PerQubitFixed, 1);
    s.references = {ref(RefKind::CueS), ref(RefKind::PoissonS), ref(RefKind::CoeS), ref(RefKind::CueY),
                    ref(RefKind::CoeY)};
    out.push_back({"fig5repeat", "repeat maps (fixed per-qubit rotations), m=40, 100 maps: CUE vs COE statistics", s});
  }

  {
    ExperimentSpec s = spectral("fig6sym", RotationMode::GlobalFixed, 1);
    s.references = {mirror_ref(RefKind::Coe2S), ref(RefKind::Coe2SEqual), ref(RefKind::CoeS), ref(RefKind::CoeY)};
    out.push_back({"fig6sym", "homogeneous maps (one rotation everywhere), m=40, 100 maps: spacings vs "
                              "mirror-symmetric COE",
                   s});
  }

  {
    ExperimentSpec s = spectral("fig6", RotationMode::GlobalFixed, 1);
    s.map.couplings_pi = chain_with_one_pi_over_5();
    s.references = {ref(RefKind::CoeS), ref(RefKind::CoeY), ref(RefKind::CueS)};
    out.push_back({"fig6", "homogeneous maps, m=40, 100 maps; one coupling pi/5, all the rest pi/4: COE statistics",
                   s});
  }

  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = make_presets();
  return all;
}

const Preset& find_preset(std::string_view name) {
  const auto& all = presets();
  const auto it = std::find_if(all.begin(), all.end(), [&](const Preset& p) { return p.name == name; });
  if (it == all.end()) throw InvalidArgument("unknown preset '" + std::string(name) + "'");
  return *it;
}

}  // namespace qca
