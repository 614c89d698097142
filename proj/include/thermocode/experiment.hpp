#pragma once

// Experiment runner behind the `thermocode` CLI: JSON configuration, the
// per-instance encode/decode pipeline, the verification report and sweeps.

#include "thermocode/discriminate.hpp"
#include "thermocode/infotherm.hpp"
#include "thermocode/protocol.hpp"
#include "thermocode/thermal.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace thermocode {

using Json = nlohmann::ordered_json;

/// Invalid configuration or usage; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RegisterSource {
  Explicit,  // fixed probability vector (or uniform)
  Haar,      // U_R Haar-random applied to the register Gibbs state
  Random,    // diagonal register with flat-Dirichlet probabilities
};

struct RegisterSpec {
  RegisterSource source = RegisterSource::Random;
  std::vector<double> probabilities;  // explicit mode; empty means uniform
};

enum class Fault { None, PovmLabels };

struct ExperimentConfig {
  std::vector<std::vector<double>> hamiltonians;  // single-copy spectra
  std::vector<double> betas;
  std::vector<int> letters;  // empty: every divisor n >= 2 of d_S^copies
  std::vector<int> copies{1};
  RegisterSpec reg;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string output_path;
  std::string format = "json";
  Fault fault = Fault::None;
};

/// One protocol instance, serializable as
/// {hamiltonian, beta, n, copies, register_mode, probabilities|seed}.
struct InstanceSpec {
  std::size_t index = 0;
  std::vector<double> energies;
  double beta = 0.0;
  int n = 2;
  int copies = 1;
  RegisterSource source = RegisterSource::Random;
  std::vector<double> probabilities;  // explicit mode
  std::uint64_t seed = 0;             // haar / random modes
  int trial = 0;
};

struct InstanceResult {
  InstanceSpec spec;
  int dim = 0;  // d_S^copies
  std::vector<double> px;
  std::vector<std::vector<double>> state_spectra;
  Eigen::MatrixXd conditional;  // p(y|x)
  std::vector<double> py;
  double hx = 0.0;
  double c_max = 0.0;
  double block0_weight = 0.0;
  double p_succ = 0.0;
  double permutation_best = 0.0;
  std::optional<double> helstrom;
  BarnettCrokeReport certificate;
  double l1 = 0.0;
  double ixy = 0.0;
  FanoFloor fano;
  ThermoLedger ledger;
  ChainCheck chain;
  int rank_register = 0;
  int rank_system = 0;
  int rank_joint = 0;
  int rank_dephased = 0;
  int lemma_lhs = 0;
  int lemma_rhs = 0;
  int min_state_rank = 0;
  double max_state_purity = 0.0;
};

ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::string& path);

/// Grid used by `verify` without a config: beta in {0, 0.5, 1, 2, 5},
/// d_S in {2, 4, 6, 8} with unit-bandwidth ladders, every n >= 2 dividing
/// d_S, 20 random diagonal registers each.
ExperimentConfig default_verify_config();

Hamiltonian hamiltonian_from_json(const Json& j);

std::vector<InstanceSpec> enumerate_instances(const ExperimentConfig& cfg);

/// Register for an instance (explicit, Haar-prepared or random diagonal).
Register make_register(const InstanceSpec& spec);

InstanceResult run_instance(const InstanceSpec& spec, Fault fault = Fault::None);

std::vector<InstanceResult> run_all(const std::vector<InstanceSpec>& specs, Fault fault, int parallel);

Json spec_to_json(const InstanceSpec& spec);
Json ledger_to_json(const ThermoLedger& ledger);
std::string ledger_csv_header();
std::string ledger_csv_row(const ThermoLedger& ledger);
/// {instance, p_succ, c_max, residuals, pass}
Json certificate_to_json(const InstanceResult& r);
Json result_to_json(const InstanceResult& r);

std::string records_csv(const std::vector<InstanceResult>& results);
Json records_json(const std::vector<InstanceResult>& results);

struct VerifyOutcome {
  Json report;
  bool pass = false;
};

VerifyOutcome verify(const ExperimentConfig& cfg, int parallel = 1);

enum class SweepQuantity { CMax, Holevo, MutualInfo, PSucc };
enum class SweepAxis { Beta, Letters, Copies };

SweepQuantity parse_quantity(const std::string& s);
SweepAxis parse_axis(const std::string& s);

struct SweepRow {
  double axis = 0.0;
  double value = 0.0;
  double bound_lo = 0.0;
  double bound_hi = 0.0;
};

struct SweepOutcome {
  std::vector<SweepRow> rows;
  bool monotone_ok = true;
  std::string csv;
};

SweepOutcome sweep(const ExperimentConfig& cfg, SweepQuantity quantity, SweepAxis axis, int parallel = 1);

/// Deterministic 64-bit seed for stream `index` of `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace thermocode
