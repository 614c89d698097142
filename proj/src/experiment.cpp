#include "thermocode/experiment.hpp"

#include "thermocode/ranklaws.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

namespace thermocode {

namespace {

constexpr double kLawTol = 1e-9;
constexpr double kPureThreshold = 1e-9;
constexpr std::int64_t kMaxSystemDim = 4096;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string join(const std::vector<double>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += num(v[i]);
  }
  return out;
}

const char* source_name(RegisterSource s) {
  switch (s) {
    case RegisterSource::Explicit: return "explicit";
    case RegisterSource::Haar: return "haar";
    case RegisterSource::Random: return "random";
  }
  return "?";
}

std::vector<double> as_doubles(const Json& j, const char* key) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) throw ConfigError(std::string("config: '") + key + "' must be a number or an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError(std::string("config: '") + key + "' entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<int> as_ints(const Json& j, const char* key) {
  std::vector<int> out;
  for (double v : as_doubles(j, key)) {
    if (v != std::floor(v) || v < 1 || v > 1e6) {
      throw ConfigError(std::string("config: '") + key + "' entries must be positive integers");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::int64_t system_dim(const std::vector<double>& energies, int copies) {
  try {
    return checked_power(static_cast<int>(energies.size()), copies, kMaxSystemDim);
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::vector<int> letters_for(const ExperimentConfig& cfg, std::int64_t dim) {
  if (!cfg.letters.empty()) return cfg.letters;
  std::vector<int> out;
  for (std::int64_t n = 2; n <= dim; ++n)
    if (dim % n == 0) out.push_back(static_cast<int>(n));
  return out;
}

std::vector<double> dirichlet_probabilities(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& v : p) {
    v = expo(rng);
    total += v;
  }
  for (auto& v : p) v /= total;
  return p;
}

Json residual_entry(bool pass, double max_residual, std::size_t failures, const Json& first_failure) {
  Json j;
  j["pass"] = pass;
  j["max_residual"] = max_residual;
  j["failures"] = failures;
  if (!first_failure.is_null()) j["first_failure"] = first_failure;
  return j;
}

// Accumulates one law over every instance: pass iff residual <= tol.
struct LawTally {
  explicit LawTally(std::string law, bool gates = true) : name(std::move(law)), gating(gates) {}

  std::string name;
  bool gating;
  double max_residual = -std::numeric_limits<double>::infinity();
  std::size_t failures = 0;
  std::size_t evaluated = 0;
  Json first_failure;

  void add(double residual, bool ok, const InstanceResult& r) {
    ++evaluated;
    max_residual = std::max(max_residual, residual);
    if (!ok) {
      if (failures == 0) first_failure = result_to_json(r);
      ++failures;
    }
  }
  bool pass() const { return failures == 0 && evaluated > 0; }
  Json to_json() const {
    Json j = residual_entry(pass(), evaluated ? max_residual : 0.0, failures, first_failure);
    j["instances"] = evaluated;
    if (!gating) j["gating"] = false;
    return j;
  }
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------
// Configuration

Hamiltonian hamiltonian_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("energies")) throw ConfigError("hamiltonian: expected {\"energies\": [...]}");
  try {
    return Hamiltonian(as_doubles(j.at("energies"), "energies"));
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  ExperimentConfig cfg;

  if (j.contains("energies")) cfg.hamiltonians.push_back(as_doubles(j.at("energies"), "energies"));
  if (j.contains("hamiltonians")) {
    for (const auto& h : j.at("hamiltonians")) {
      cfg.hamiltonians.push_back(h.is_object() ? hamiltonian_from_json(h).energies() : as_doubles(h, "hamiltonians"));
    }
  }
  if (j.contains("dims")) {
    for (int d : as_ints(j.at("dims"), "dims")) cfg.hamiltonians.push_back(Hamiltonian::unit_bandwidth_ladder(d).energies());
  }
  for (const auto& e : cfg.hamiltonians) {
    try {
      Hamiltonian h(e);
    } catch (const InvalidInput& ex) {
      throw ConfigError(std::string("config: ") + ex.what());
    }
  }

  if (j.contains("betas")) cfg.betas = as_doubles(j.at("betas"), "betas");
  if (j.contains("beta")) {
    auto b = as_doubles(j.at("beta"), "beta");
    cfg.betas.insert(cfg.betas.end(), b.begin(), b.end());
  }
  for (double b : cfg.betas) {
    if (!std::isfinite(b) || b < 0.0) throw ConfigError("config: betas must be finite and non-negative");
  }

  if (j.contains("n")) cfg.letters = as_ints(j.at("n"), "n");
  if (j.contains("copies")) cfg.copies = as_ints(j.at("copies"), "copies");
  if (j.contains("trials")) {
    const auto t = as_ints(j.at("trials"), "trials");
    if (t.size() != 1) throw ConfigError("config: 'trials' must be a single integer");
    cfg.trials = t.front();
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();

  if (j.contains("register")) {
    const Json& r = j.at("register");
    const std::string mode = r.value("mode", "random");
    if (mode == "explicit") {
      cfg.reg.source = RegisterSource::Explicit;
      if (r.contains("probabilities") && !(r.at("probabilities").is_string() && r.at("probabilities") == "uniform")) {
        cfg.reg.probabilities = as_doubles(r.at("probabilities"), "probabilities");
        try {
          ProbVector pv(cfg.reg.probabilities);
        } catch (const InvalidInput& e) {
          throw ConfigError(std::string("config: register ") + e.what());
        }
      }
    } else if (mode == "haar") {
      cfg.reg.source = RegisterSource::Haar;
    } else if (mode == "random") {
      cfg.reg.source = RegisterSource::Random;
    } else {
      throw ConfigError("config: register.mode must be explicit, haar or random");
    }
    if (r.contains("seed")) cfg.seed = r.at("seed").get<std::uint64_t>();
  }

  if (j.contains("output")) {
    const Json& o = j.at("output");
    cfg.output_path = o.value("path", "");
    cfg.format = o.value("format", cfg.format);
  }
  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("config: output.format must be csv or json");

  if (j.contains("inject_fault")) {
    const std::string f = j.at("inject_fault").get<std::string>();
    if (f == "povm_labels") {
      cfg.fault = Fault::PovmLabels;
    } else if (f != "none") {
      throw ConfigError("config: unknown inject_fault '" + f + "'");
    }
  }

  // Divisibility of every (d_S^copies, n) pair and explicit-register sizes.
  for (const auto& e : cfg.hamiltonians)
    for (int c : cfg.copies) {
      const auto dim = system_dim(e, c);
      for (int n : cfg.letters) {
        if (n < 1 || dim % n != 0) {
          throw ConfigError("config: n = " + std::to_string(n) + " does not divide d_S^copies = " + std::to_string(dim));
        }
        if (!cfg.reg.probabilities.empty() && static_cast<int>(cfg.reg.probabilities.size()) != n) {
          throw ConfigError("config: explicit probabilities must have one entry per letter (n = " +
                            std::to_string(n) + ")");
        }
      }
    }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  return parse_config(j);
}

ExperimentConfig default_verify_config() {
  ExperimentConfig cfg;
  for (int d : {2, 4, 6, 8}) cfg.hamiltonians.push_back(Hamiltonian::unit_bandwidth_ladder(d).energies());
  cfg.betas = {0.0, 0.5, 1.0, 2.0, 5.0};
  cfg.reg.source = RegisterSource::Random;
  cfg.trials = 20;
  cfg.seed = 20240901;
  return cfg;
}

std::vector<InstanceSpec> enumerate_instances(const ExperimentConfig& cfg) {
  std::vector<InstanceSpec> out;
  const int trials = cfg.reg.source == RegisterSource::Explicit ? 1 : cfg.trials;
  for (const auto& e : cfg.hamiltonians)
    for (int c : cfg.copies) {
      const auto dim = system_dim(e, c);
      for (int n : letters_for(cfg, dim))
        for (double beta : cfg.betas)
          for (int t = 0; t < trials; ++t) {
            InstanceSpec s;
            s.index = out.size();
            s.energies = e;
            s.beta = beta;
            s.n = n;
            s.copies = c;
            s.source = cfg.reg.source;
            s.trial = t;
            s.seed = derive_seed(cfg.seed, s.index);
            if (s.source == RegisterSource::Explicit) {
              s.probabilities = cfg.reg.probabilities.empty()
                                    ? std::vector<double>(static_cast<std::size_t>(n), 1.0 / n)
                                    : cfg.reg.probabilities;
            }
            out.push_back(std::move(s));
          }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Pipeline

Register make_register(const InstanceSpec& spec) {
  switch (spec.source) {
    case RegisterSource::Explicit:
      return explicit_register(spec.probabilities, spec.n);
    case RegisterSource::Haar: {
      const DensityMatrix gamma_r = gibbs_state(Hamiltonian::unit_bandwidth_ladder(spec.n), spec.beta);
      return prepare_register(gamma_r, haar_unitary(spec.n, spec.seed));
    }
    case RegisterSource::Random:
      return explicit_register(dirichlet_probabilities(spec.n, spec.seed), spec.n);
  }
  throw InvalidInput("make_register: unknown register source");
}

InstanceResult run_instance(const InstanceSpec& spec, Fault fault) {
  InstanceResult r;
  r.spec = spec;
  const Hamiltonian h(spec.energies);
  const BlockedThermalState blocked =
      spec.copies == 1 ? coarse_grain(h, spec.beta, spec.n) : multicopy_coarse_grain(h, spec.beta, spec.copies, spec.n);
  const SubspacePartition& partition = blocked.partition;
  const int n = spec.n;
  r.dim = partition.total_dim();

  const DensityMatrix system = blocked.state();
  const Register reg = make_register(spec);
  const auto unitaries = shift_unitaries(partition);
  const Encoding enc = encode(reg, system, unitaries);
  const Ensemble& ens = enc.ensemble;

  Povm povm = projective_povm(partition);
  if (fault == Fault::PovmLabels) {
    std::vector<int> label(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) label[static_cast<std::size_t>(x)] = (x + 1) % n;
    povm = povm.relabeled(label);
  }

  r.px = ens.probabilities();
  const ProbVector px(r.px);
  for (const auto& it : ens.items()) {
    const RVector ev = it.rho.eigenvalues();
    r.state_spectra.emplace_back(ev.data(), ev.data() + ev.size());
  }
  const ConditionalDistribution cond = conditional_distribution(ens, povm);
  r.conditional = cond.table;
  const ProbVector py = output_distribution(px, cond);
  r.py = py.entries();

  r.hx = shannon_entropy(px);
  r.c_max = c_max(system, n);
  r.block0_weight = blocked.block_weight(0);
  r.p_succ = success_probability(ens, povm);
  if (n <= 8) r.permutation_best = exhaustive_permutation_oracle(ens, povm);
  if (n == 2) {
    const auto& it = ens.items();
    r.helstrom = helstrom_oracle(it[0].p, it[0].rho, it[1].p, it[1].rho);
  }
  r.certificate = barnett_croke_certificate(ens, povm);
  r.l1 = l1_distance(py, px);
  r.ixy = mutual_information(px, cond);
  r.fano = fano_floor(r.hx, r.c_max, n);

  const DensityMatrix register_after = partial_trace(enc.joint, n, r.dim, Keep::A);
  const DensityMatrix system_after = partial_trace(enc.joint, n, r.dim, Keep::B);
  r.ledger = thermo_ledger(system, system_after, reg.state, register_after, blocked.level_energies, spec.beta, ens);
  r.chain = chain_inequality(r.hx, r.ledger.holevo_chi, r.ixy, r.fano.value);

  r.rank_register = numerical_rank(reg.state).value;
  r.rank_system = numerical_rank(system).value;
  r.rank_joint = numerical_rank(enc.joint).value;
  r.rank_dephased = numerical_rank(dephase_register(enc.joint, n, r.dim)).value;
  const RankLawReport lemma = lemma1_check(reg.state, system, ens);
  r.lemma_lhs = lemma.lhs;
  r.lemma_rhs = lemma.rhs;
  r.min_state_rank = *std::min_element(lemma.per_state_ranks.begin(), lemma.per_state_ranks.end());
  for (const auto& it : ens.items()) r.max_state_purity = std::max(r.max_state_purity, it.rho.purity());
  return r;
}

std::vector<InstanceResult> run_all(const std::vector<InstanceSpec>& specs, Fault fault, int parallel) {
  std::vector<std::optional<InstanceResult>> slots(specs.size());
  const int workers = std::max(1, std::min<int>(parallel, static_cast<int>(specs.size())));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  auto work = [&](int w) {
    try {
      for (std::size_t i = static_cast<std::size_t>(w); i < specs.size(); i += static_cast<std::size_t>(workers)) {
        slots[i] = run_instance(specs[i], fault);
      }
    } catch (...) {
      errors[static_cast<std::size_t>(w)] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<InstanceResult> out;
  out.reserve(specs.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

Json spec_to_json(const InstanceSpec& spec) {
  Json j;
  j["index"] = spec.index;
  j["hamiltonian"] = {{"energies", spec.energies}};
  j["beta"] = spec.beta;
  j["n"] = spec.n;
  j["copies"] = spec.copies;
  j["register_mode"] = source_name(spec.source);
  if (spec.source == RegisterSource::Explicit) {
    j["probabilities"] = spec.probabilities;
  } else {
    j["seed"] = spec.seed;
  }
  return j;
}

Json ledger_to_json(const ThermoLedger& l) {
  return Json{{"delta_S_S", l.delta_S_S},         {"delta_S_R", l.delta_S_R},
              {"heat_betaQ", l.heat_betaQ},       {"rel_entropy_D", l.rel_entropy_D},
              {"holevo_chi", l.holevo_chi},       {"free_energy_beta_dF", l.free_energy_beta_dF},
              {"entropy_residual", l.entropy_residual}, {"heat_residual", l.heat_residual}};
}

std::string ledger_csv_header() {
  return "delta_S_S,delta_S_R,heat_betaQ,rel_entropy_D,holevo_chi,free_energy_beta_dF";
}

std::string ledger_csv_row(const ThermoLedger& l) {
  return num(l.delta_S_S) + "," + num(l.delta_S_R) + "," + num(l.heat_betaQ) + "," + num(l.rel_entropy_D) + "," +
         num(l.holevo_chi) + "," + num(l.free_energy_beta_dF);
}

Json certificate_to_json(const InstanceResult& r) {
  return Json{{"instance", spec_to_json(r.spec)},
              {"p_succ", r.p_succ},
              {"c_max", r.c_max},
              {"residuals",
               {{"cross", r.certificate.max_cross_residual}, {"min_eigenvalue", r.certificate.min_eigenvalue}}},
              {"pass", r.certificate.optimal}};
}

Json result_to_json(const InstanceResult& r) {
  Json j;
  j["instance"] = spec_to_json(r.spec);
  j["dim"] = r.dim;
  j["p_x"] = r.px;
  j["H_X"] = r.hx;
  j["state_spectra"] = r.state_spectra;
  std::vector<std::vector<double>> cond(static_cast<std::size_t>(r.conditional.rows()));
  for (Eigen::Index y = 0; y < r.conditional.rows(); ++y)
    for (Eigen::Index x = 0; x < r.conditional.cols(); ++x) cond[static_cast<std::size_t>(y)].push_back(r.conditional(y, x));
  j["p_y_given_x"] = cond;
  j["p_y"] = r.py;
  j["c_max"] = r.c_max;
  j["p_succ"] = r.p_succ;
  if (r.helstrom) j["helstrom"] = *r.helstrom;
  j["barnett_croke"] = certificate_to_json(r)["residuals"];
  j["barnett_croke"]["pass"] = r.certificate.optimal;
  j["l1_distance"] = r.l1;
  j["I_XY"] = r.ixy;
  j["fano_floor"] = r.fano.value;
  j["fano_floor_raw"] = r.fano.raw;
  j["ledger"] = ledger_to_json(r.ledger);
  j["ranks"] = {{"register", r.rank_register}, {"system", r.rank_system}, {"joint", r.rank_joint},
                {"dephased", r.rank_dephased},  {"lemma_lhs", r.lemma_lhs},  {"lemma_rhs", r.lemma_rhs},
                {"min_state", r.min_state_rank}};
  j["max_state_purity"] = r.max_state_purity;
  return j;
}

std::string records_csv(const std::vector<InstanceResult>& results) {
  std::ostringstream os;
  os << "index,d_s,copies,dim,n,beta,register_mode,seed,p_x,H_X,c_max,p_succ,I_XY,fano_floor,fano_floor_raw,"
        "l1_distance,"
     << ledger_csv_header() << ",state_spectra,p_y_given_x\n";
  for (const auto& r : results) {
    std::string spec_str;
    for (std::size_t x = 0; x < r.state_spectra.size(); ++x) {
      if (x) spec_str += '|';
      spec_str += join(r.state_spectra[x], ';');
    }
    std::string cond_str;
    for (Eigen::Index y = 0; y < r.conditional.rows(); ++y) {
      if (y) cond_str += '|';
      std::vector<double> row;
      for (Eigen::Index x = 0; x < r.conditional.cols(); ++x) row.push_back(r.conditional(y, x));
      cond_str += join(row, ';');
    }
    const std::string seed = r.spec.source == RegisterSource::Explicit ? "" : std::to_string(r.spec.seed);
    os << r.spec.index << ',' << r.spec.energies.size() << ',' << r.spec.copies << ',' << r.dim << ',' << r.spec.n << ','
       << num(r.spec.beta) << ',' << source_name(r.spec.source) << ',' << seed << ',' << join(r.px, ';') << ','
       << num(r.hx) << ',' << num(r.c_max) << ',' << num(r.p_succ) << ',' << num(r.ixy) << ',' << num(r.fano.value)
       << ',' << num(r.fano.raw) << ',' << num(r.l1) << ',' << ledger_csv_row(r.ledger) << ',' << spec_str << ','
       << cond_str << '\n';
  }
  return os.str();
}

Json records_json(const std::vector<InstanceResult>& results) {
  Json arr = Json::array();
  for (const auto& r : results) arr.push_back(result_to_json(r));
  return arr;
}

// ---------------------------------------------------------------------------
// Verification

VerifyOutcome verify(const ExperimentConfig& cfg, int parallel) {
  const auto specs = enumerate_instances(cfg);
  if (specs.empty()) throw ConfigError("verify: the configured grid is empty");
  const auto results = run_all(specs, cfg.fault, parallel);

  LawTally lemma1{"lemma1"}, theorem2{"theorem2"}, theorem3{"theorem3"}, eq15{"eq15"}, eq16{"eq16"}, eq22{"eq22"},
      eq28{"eq28"}, chain{"chain"}, ixy_le_betaq{"ixy_le_betaQ"};
  LawTally helstrom{"helstrom", false}, barnett{"barnett_croke", false};

  for (const auto& r : results) {
    {
      // rank(rho_S) rank(rho_R) <= n rank(rho_max), rank(joint) = rank(rho_R) rank(rho_S), dephasing never lowers rank
      const double res = std::max({static_cast<double>(r.lemma_lhs - r.lemma_rhs),
                                   std::abs(static_cast<double>(r.rank_joint - r.rank_register * r.rank_system)),
                                   static_cast<double>(r.rank_joint - r.rank_dephased)});
      lemma1.add(res, res <= 0.0, r);
    }
    {
      const double res = std::max(static_cast<double>(r.dim - r.min_state_rank), r.max_state_purity - (1.0 - kPureThreshold));
      theorem2.add(res, r.min_state_rank == r.dim && r.max_state_purity < 1.0 - kPureThreshold, r);
    }
    {
      const double res = std::abs(r.p_succ - r.c_max);
      theorem3.add(res, res <= kLawTol, r);
    }
    {
      const double res = r.l1 - (1.0 - r.c_max);
      eq15.add(res, res <= kLawTol, r);
    }
    {
      const double res = r.fano.value - r.ixy;
      eq16.add(res, res <= kLawTol, r);
    }
    eq22.add(r.ledger.entropy_residual, r.ledger.entropy_residual <= kLawTol, r);
    {
      const double res = std::max(r.ledger.heat_residual, r.ledger.holevo_chi - r.ledger.heat_betaQ);
      eq28.add(res, res <= kLawTol, r);
    }
    {
      const double res = -*std::min_element(r.chain.slack.begin(), r.chain.slack.end());
      chain.add(res, r.chain.holds, r);
    }
    {
      const double res = r.ixy - r.ledger.heat_betaQ;
      ixy_le_betaq.add(res, res <= kLawTol, r);
    }
    if (r.helstrom) {
      const double res = std::abs(*r.helstrom - r.c_max);
      helstrom.add(res, res <= kLawTol, r);
    }
    {
      const double res = std::max(r.certificate.max_cross_residual, -r.certificate.min_eigenvalue);
      barnett.add(res, r.certificate.optimal, r);
    }
  }

  Json laws;
  bool pass = true;
  for (const LawTally* t : {&lemma1, &theorem2, &theorem3, &eq15, &eq16, &eq22, &eq28, &chain, &ixy_le_betaq}) {
    laws[t->name] = t->to_json();
    pass = pass && t->pass();
  }
  Json diagnostics;
  if (helstrom.evaluated) diagnostics[helstrom.name] = helstrom.to_json();
  diagnostics[barnett.name] = barnett.to_json();

  Json report;
  report["instances"] = results.size();
  report["seed"] = cfg.seed;
  report["laws"] = laws;
  report["diagnostics"] = diagnostics;
  report["pass"] = pass;
  return VerifyOutcome{std::move(report), pass};
}

// ---------------------------------------------------------------------------
// Sweeps

SweepQuantity parse_quantity(const std::string& s) {
  if (s == "c_max") return SweepQuantity::CMax;
  if (s == "holevo") return SweepQuantity::Holevo;
  if (s == "mutual_info") return SweepQuantity::MutualInfo;
  if (s == "p_succ") return SweepQuantity::PSucc;
  throw ConfigError("unknown sweep quantity '" + s + "' (expected c_max, holevo, mutual_info or p_succ)");
}

SweepAxis parse_axis(const std::string& s) {
  if (s == "beta") return SweepAxis::Beta;
  if (s == "n") return SweepAxis::Letters;
  if (s == "copies") return SweepAxis::Copies;
  throw ConfigError("unknown sweep axis '" + s + "' (expected beta, n or copies)");
}

SweepOutcome sweep(const ExperimentConfig& cfg, SweepQuantity quantity, SweepAxis axis, int parallel) {
  if (cfg.hamiltonians.empty() || cfg.betas.empty()) throw ConfigError("sweep: config needs a Hamiltonian and betas");
  const auto& energies = cfg.hamiltonians.front();
  const int d_s = static_cast<int>(energies.size());

  // Letter count used when n is not the swept axis.
  auto fixed_letters = [&](int copies) {
    const auto dim = system_dim(energies, copies);
    if (!cfg.letters.empty()) return cfg.letters.front();
    if (axis == SweepAxis::Copies) return d_s;
    const auto all = letters_for(cfg, dim);
    if (all.empty()) throw ConfigError("sweep: no admissible letter count");
    return all.front();
  };

  std::vector<InstanceSpec> specs;
  std::vector<double> axis_values;
  auto push = [&](double beta, int n, int copies, double axis_value) {
    if (system_dim(energies, copies) % n != 0) {
      throw ConfigError("sweep: n = " + std::to_string(n) + " does not divide d_S^copies");
    }
    InstanceSpec s;
    s.index = specs.size();
    s.energies = energies;
    s.beta = beta;
    s.n = n;
    s.copies = copies;
    s.source = cfg.reg.source;
    s.seed = derive_seed(cfg.seed, s.index);
    if (s.source == RegisterSource::Explicit) {
      s.probabilities = cfg.reg.probabilities.empty() ? std::vector<double>(static_cast<std::size_t>(n), 1.0 / n)
                                                      : cfg.reg.probabilities;
      if (static_cast<int>(s.probabilities.size()) != n) {
        throw ConfigError("sweep: explicit probabilities do not match n = " + std::to_string(n));
      }
    }
    specs.push_back(std::move(s));
    axis_values.push_back(axis_value);
  };

  switch (axis) {
    case SweepAxis::Beta: {
      const int n = fixed_letters(cfg.copies.front());
      for (double b : cfg.betas) push(b, n, cfg.copies.front(), b);
      break;
    }
    case SweepAxis::Letters: {
      const auto dim = system_dim(energies, cfg.copies.front());
      for (int n : letters_for(cfg, dim)) push(cfg.betas.front(), n, cfg.copies.front(), n);
      break;
    }
    case SweepAxis::Copies: {
      const int n = fixed_letters(cfg.copies.front());
      for (int c : cfg.copies) push(cfg.betas.front(), n, c, c);
      break;
    }
  }
  if (specs.empty()) throw ConfigError("sweep: empty axis");

  const auto results = run_all(specs, cfg.fault, parallel);
  SweepOutcome out;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    SweepRow row;
    row.axis = axis_values[i];
    switch (quantity) {
      case SweepQuantity::CMax:
        row = {row.axis, r.c_max, 1.0 / r.spec.n, 1.0};
        break;
      case SweepQuantity::PSucc:
        row = {row.axis, r.p_succ, 1.0 / r.spec.n, 1.0};
        break;
      case SweepQuantity::Holevo:
        row = {row.axis, r.ledger.holevo_chi, r.ixy, std::min(r.hx, r.ledger.heat_betaQ)};
        break;
      case SweepQuantity::MutualInfo:
        row = {row.axis, r.ixy, r.fano.value, r.ledger.holevo_chi};
        break;
    }
    out.rows.push_back(row);
  }

  if (quantity == SweepQuantity::CMax && axis == SweepAxis::Beta) {
    std::vector<SweepRow> sorted = out.rows;
    std::stable_sort(sorted.begin(), sorted.end(), [](const SweepRow& a, const SweepRow& b) { return a.axis < b.axis; });
    const bool gapped = energies.front() < energies.back();
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i].axis == sorted[i - 1].axis) continue;
      if (sorted[i].value < sorted[i - 1].value - 1e-12) out.monotone_ok = false;
      // Strict growth is only resolvable while C_max is visibly below 1 in double precision.
      if (gapped && sorted[i - 1].value < 1.0 - 1e-12 && !(sorted[i].value > sorted[i - 1].value)) {
        out.monotone_ok = false;
      }
    }
  }

  std::ostringstream os;
  os << "axis,value,bound_lo,bound_hi\n";
  for (const auto& row : out.rows) {
    os << num(row.axis) << ',' << num(row.value) << ',' << num(row.bound_lo) << ',' << num(row.bound_hi) << '\n';
  }
  out.csv = os.str();
  return out;
}

}  // namespace thermocode
