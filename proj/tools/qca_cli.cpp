// qca: build QCA pseudo-random map ensembles and compare their statistics with
// circular-ensemble references.
//
//   qca run --spec <file> --out <dir> [--seed <u64>] [--threads <k>]
//   qca preset <name> --out <dir> [--seed <u64>] [--threads <k>] [--ensemble <n>]
//   qca list-presets
//   qca validate --spec <file>
//
// Exit codes: 0 success, 2 spec error, 3 numeric error.
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "exit_codes.hpp"
#include "qca/errors.hpp"
#include "qca/experiment.hpp"

namespace {

void print_summary(const qca::ResultBundle& bundle, const std::string& out_dir) {
  for (const auto& run : bundle.runs) {
    std::cout << "m=" << run.iterations;
    if (run.spacings) std::cout << "  spacings=" << run.spacings->samples.size();
    if (run.eigvec_elements) std::cout << "  eigvec_elements=" << run.eigvec_elements->samples.size();
    if (run.q_values) std::cout << "  q=" << run.q_values->samples.size();
    std::cout << '\n';
    for (const auto& g : run.gof) {
      std::cout << "  " << g.statistic << " vs " << g.reference << ": D=" << qca::format_double(g.result.statistic)
                << " crit=" << qca::format_double(g.result.critical_value)
                << (g.result.reject ? "  REJECT" : "  accept") << '\n';
    }
  }
  std::cout << "results written to " << out_dir << '\n';
}

int execute(qca::ExperimentSpec spec, const std::string& out_dir, std::optional<std::uint64_t> seed,
            unsigned threads) {
  if (seed) spec.seed = *seed;
  if (!out_dir.empty()) spec.output = out_dir;
  if (spec.output.empty()) throw qca::InvalidArgument("no output directory given (--out)");
  for (const auto& w : qca::validate(spec)) std::cerr << "warning: " << w << '\n';
  const auto bundle = qca::run_experiment(spec, threads);
  qca::write_bundle(bundle, spec.output);
  print_summary(bundle, spec.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QCA pseudo-random map simulator and randomness statistics"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_dir;
  std::string preset_name;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::optional<std::size_t> ensemble;

  auto* run = app.add_subcommand("run", "run an experiment described by a JSON spec file");
  run->add_option("--spec", spec_path, "experiment spec (JSON)")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed, "override the master seed");
  run->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* preset = app.add_subcommand("preset", "run a built-in figure preset");
  preset->add_option("name", preset_name, "preset name (see list-presets)")->required();
  preset->add_option("--out", out_dir, "output directory")->required();
  preset->add_option("--seed", seed, "override the master seed");
  preset->add_option("--threads", threads, "worker threads (0 = all cores)");
  preset->add_option("--ensemble", ensemble, "override the ensemble size");
  bool dump = false;
  preset->add_flag("--dump-spec", dump, "print the preset's spec JSON instead of running it");

  auto* list = app.add_subcommand("list-presets", "list built-in presets");

  auto* validate = app.add_subcommand("validate", "check a spec file without running it");
  validate->add_option("--spec", spec_path, "experiment spec (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qca::cli::kExitSpecError;
  }

  try {
    if (*list) {
      for (const auto& p : qca::presets()) std::cout << p.name << "\t" << p.description << '\n';
      return 0;
    }
    if (*validate) {
      const auto spec = qca::load_spec(spec_path);
      for (const auto& w : qca::validate(spec)) std::cerr << "warning: " << w << '\n';
      std::cout << "ok\n";
      return 0;
    }
    if (*preset) {
      auto spec = qca::find_preset(preset_name).spec;
      if (ensemble) spec.ensemble_size = *ensemble;
      if (dump) {
        if (seed) spec.seed = *seed;
        std::cout << qca::to_json(spec).dump(2) << '\n';
        return 0;
      }
      return execute(std::move(spec), out_dir, seed, threads);
    }
    return execute(qca::load_spec(spec_path), out_dir, seed, threads);
  } catch (...) {
    return qca::cli::report_exception(std::current_exception(), std::cerr);
  }
}
