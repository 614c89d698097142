// thermocode: encode, verify and sweep thermally constrained encodings.
//
//   thermocode encode|verify|sweep --config <path> [--seed <u64>] [--out <path>]
//                                  [--format csv|json] [--parallel <k>]
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.

#include "thermocode/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace thermocode;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  int parallel = 1;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool config_required) {
  auto* opt = cmd->add_option("--config", o.config, "JSON experiment configuration");
  if (config_required) opt->required();
  cmd->add_option("--seed", o.seed, "master seed (overrides the config)");
  cmd->add_option("--out", o.out, "output file (default: config output.path or stdout)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--parallel", o.parallel, "worker threads")->check(CLI::PositiveNumber);
}

ExperimentConfig resolve(const CommonOptions& o, bool allow_default) {
  ExperimentConfig cfg = o.config.empty() && allow_default ? default_verify_config() : load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (!o.out.empty()) cfg.output_path = o.out;
  if (!o.format.empty()) cfg.format = o.format;
  return cfg;
}

void emit(const ExperimentConfig& cfg, const std::string& text) {
  if (cfg.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.output_path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + cfg.output_path + "'");
  f << text;
}

int run_encode(const CommonOptions& o) {
  const ExperimentConfig cfg = resolve(o, false);
  const auto specs = enumerate_instances(cfg);
  if (specs.empty()) throw ConfigError("encode: the configured grid is empty");
  const auto results = run_all(specs, cfg.fault, o.parallel);
  emit(cfg, cfg.format == "csv" ? records_csv(results) : records_json(results).dump(2) + "\n");
  return kExitPass;
}

int run_verify(const CommonOptions& o) {
  const ExperimentConfig cfg = resolve(o, true);
  const VerifyOutcome outcome = verify(cfg, o.parallel);
  emit(cfg, outcome.report.dump(2) + "\n");
  if (!outcome.pass) {
    std::cerr << "verify: one or more laws failed\n";
    return kExitFail;
  }
  return kExitPass;
}

int run_sweep(const CommonOptions& o, const std::string& quantity, const std::string& axis) {
  ExperimentConfig cfg = resolve(o, false);
  const SweepOutcome s = sweep(cfg, parse_quantity(quantity), parse_axis(axis), o.parallel);
  emit(cfg, s.csv);
  if (!s.monotone_ok) {
    std::cerr << "sweep: C_max is not increasing with beta\n";
    return kExitFail;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermally constrained encoding of classical information in quantum ensembles"};
  app.require_subcommand(1);

  CommonOptions enc_opts, ver_opts, sw_opts;
  auto* enc = app.add_subcommand("encode", "run the encoding pipeline and write per-instance records");
  add_common(enc, enc_opts, true);
  auto* ver = app.add_subcommand("verify", "check every law on the configured grid (default grid without --config)");
  add_common(ver, ver_opts, false);
  auto* sw = app.add_subcommand("sweep", "tabulate one quantity along one axis as CSV");
  add_common(sw, sw_opts, true);
  std::string quantity, axis;
  sw->add_option("--quantity", quantity, "c_max | holevo | mutual_info | p_succ")->required();
  sw->add_option("--axis", axis, "beta | n | copies")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*enc) return run_encode(enc_opts);
    if (*ver) return run_verify(ver_opts);
    if (*sw) return run_sweep(sw_opts, quantity, axis);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
