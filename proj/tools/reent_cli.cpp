// reent: generate states, compute (restricted) relative entropies of
// entanglement, and run the verification suites.
//
// Exit codes: 0 ok, 1 suite failures, 2 bad input, 3 solver did not converge.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reent/io.hpp"
#include "reent/states.hpp"

namespace {

using namespace reent;

constexpr int kOk = 0;
constexpr int kFailures = 1;
constexpr int kInputError = 2;
constexpr int kNotConverged = 3;

Partition parse_groups(const std::string& text) {
  std::vector<std::vector<int>> groups;
  std::stringstream outer(text);
  std::string group;
  while (std::getline(outer, group, ';')) {
    std::vector<int> g;
    std::stringstream inner(group);
    std::string item;
    while (std::getline(inner, item, ',')) {
      try {
        std::size_t used = 0;
        g.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw InputError("--groups: '" + item + "' is not a party index");
      }
    }
    groups.push_back(std::move(g));
  }
  return Partition(std::move(groups));
}

void write_or_print(const Json& j, const std::string& path) {
  if (path.empty())
    std::cout << io::dump(j);
  else
    io::write_text(path, io::dump(j));
}

std::string side_path(const std::string& out, const std::string& explicit_path, const std::string& suffix) {
  if (!explicit_path.empty()) return explicit_path;
  if (out.empty()) return {};
  const auto dot = out.rfind(".json");
  return (dot != std::string::npos && dot + 5 == out.size() ? out.substr(0, dot) : out) + suffix;
}

struct GenArgs {
  std::string kind;
  std::vector<int> dims;
  int rank = 0;
  int parties = 3;
  int terms = 0;
  double lambda = 0.75;
  std::uint64_t seed = 1;
  std::string out;
};

StateFile generate(const GenArgs& a) {
  StateFile f{bell_state(), std::nullopt, {a.kind, std::nullopt, std::string(Rng::kName)}};
  auto dims_or = [&](Dims fallback) { return a.dims.empty() ? fallback : Dims(a.dims); };
  if (a.kind == "bell") {
    const Dims d = dims_or(Dims{2, 2});
    if (d.parties() != 2 || d[0] != d[1]) throw InputError("gen bell: dims must be [d,d]");
    f.state = maximally_entangled(d[0]);
    f.metadata.generator = "maximally_entangled";
  } else if (a.kind == "ghz") {
    if (a.parties < 2) throw InputError("gen ghz: need at least two parties");
    f.state = ghz_state(a.parties);
    f.metadata.generator = "ghz";
  } else if (a.kind == "werner") {
    if (!(a.lambda >= 0 && a.lambda <= 1)) throw InputError("gen werner: lambda must lie in [0, 1]");
    f.state = werner_state(a.lambda);
    f.metadata.name = "werner(" + io::decimal(a.lambda) + ")";
    f.metadata.generator = "lambda*phi+ + (1-lambda)*(I-phi+)/3";
  } else if (a.kind == "tiles") {
    f.state = tiles_state();
    f.metadata.generator = "tiles-upb";
  } else if (a.kind == "ginibre") {
    const Dims d = dims_or(Dims{2, 2});
    Rng rng(a.seed);
    f.state = random_state(d, a.rank > 0 ? a.rank : d.total(), rng);
    f.metadata.seed = a.seed;
  } else if (a.kind == "separable") {
    const Dims d = dims_or(Dims{2, 2});
    Rng rng(a.seed);
    SeparableSample s = random_separable(d, Partition::finest(d), a.terms > 0 ? a.terms : 2 * d.total(), rng);
    f.state = std::move(s.state);
    f.witness = std::move(s.witness);
    f.metadata.seed = a.seed;
  } else {
    throw InputError("unknown state kind '" + a.kind + "' (bell, ghz, werner, tiles, ginibre, separable)");
  }
  return f;
}

struct ComputeArgs {
  std::string state;
  std::string set = "sep";
  std::string cls = "sep";
  std::vector<int> budgets;
  std::string groups;
  std::string config;
  std::uint64_t seed = 1;
  std::string out;
  std::string witness;
  std::string witness_measurement;
  bool require_convergence = false;
};

RunConfig load_config(const std::string& path, CLI::App* cmd) {
  RunConfig c = path.empty() ? RunConfig{} : parse_config(path);
  if (cmd->count("--seed")) c.seed = cmd->get_option("--seed")->as<std::uint64_t>();
  return c;
}

ReferenceSetSpec reference_of(const ComputeArgs& a, const RunConfig& c, CLI::App* cmd, const Dims& dims) {
  const ReferenceKind k = cmd->count("--set") ? parse_reference_kind(a.set) : c.reference;
  return {k, a.groups.empty() ? Partition::finest(dims) : parse_groups(a.groups)};
}

int run_ree(const ComputeArgs& a, CLI::App* cmd) {
  const RunConfig c = load_config(a.config, cmd);
  const StateFile f = parse_state(a.state);
  const ReferenceSetSpec p = reference_of(a, c, cmd, f.state.dims());
  const OptimizationResult r = relative_entropy_of_entanglement(f.state, p, c.solver());
  const std::string wpath = side_path(a.out, a.witness, ".witness.json");
  if (!wpath.empty()) {
    StateFile w{r.witness, r.decomposition, {"ree witness", c.seed, "ree --set " + to_string(p.kind)}};
    // the witness file is re-read with the strict reassembly check, so store the decomposition's own sum
    if (w.witness) w.state = DensityOperator(hermitian_part(w.witness->assemble()), w.state.dims(), 1e-8);
    emit_state(w, wpath);
  }
  Json j = optimization_json(r, wpath);
  j["reference"] = to_string(p.kind);
  j["partition"] = io::partition_json(p.partition);
  write_or_print(j, a.out);
  return a.require_convergence && !r.converged ? kNotConverged : kOk;
}

int run_rree(const ComputeArgs& a, CLI::App* cmd) {
  RunConfig c = load_config(a.config, cmd);
  if (cmd->count("--class")) c.measurement = parse_measurement_class(a.cls);
  if (cmd->count("--budgets")) c.budgets = a.budgets;
  const StateFile f = parse_state(a.state);
  const ReferenceSetSpec p = reference_of(a, c, cmd, f.state.dims());
  const CertifiedValue v = restricted_ree(f.state, p, c.measurement_spec(), c.restricted());
  const std::string spath = side_path(a.out, a.witness, ".witness.json");
  const std::string mpath = side_path(a.out, a.witness_measurement, ".measurement.json");
  if (!spath.empty()) {
    StateFile w{v.witness_state, v.witness_decomposition, {"rree witness", c.seed, "rree --class " + to_string(c.measurement)}};
    if (w.witness) w.state = DensityOperator(hermitian_part(w.witness->assemble()), w.state.dims(), 1e-8);
    emit_state(w, spath);
  }
  if (!mpath.empty()) emit_povm(v.witness_measurement, mpath);
  Json j = certified_json(v, spath, mpath);
  j["reference"] = to_string(p.kind);
  j["partition"] = io::partition_json(p.partition);
  j["class"] = to_string(c.measurement);
  write_or_print(j, a.out);
  return kOk;
}

struct VerifyArgs {
  std::string suite;
  int samples = 0;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string config;
  std::string out;
  std::string csv;
};

int run_verify(const VerifyArgs& a, CLI::App* cmd) {
  RunConfig c = load_config(a.config, cmd);
  if (cmd->count("--samples")) c.samples = a.samples;
  if (cmd->count("--threads")) c.threads = a.threads;
  if (cmd->count("--out")) c.output = a.out;
  if (cmd->count("--csv")) c.csv = a.csv;
  if (c.samples < 1 || c.threads < 1) throw InputError("--samples and --threads must be positive");
  const VerifyConfig vc = c.verify();
  VerificationReport r;
  if (a.suite == "proof-chain")
    r = check_proof_chain_suite(c.samples, vc);
  else if (a.suite == "theorem1")
    r = check_theorem1(c.samples, vc);
  else if (a.suite == "theorem2")
    r = check_theorem2(c.samples, vc);
  else if (a.suite == "mutual")
    r = check_mutual_bound(c.samples, vc);
  else
    throw InputError("unknown suite '" + a.suite + "' (proof-chain, theorem1, theorem2, mutual)");
  write_or_print(report_json(r), c.output);
  if (!c.csv.empty()) io::write_text(c.csv, report_csv(r));
  const auto failed = r.failures();
  std::fprintf(stderr, "%s: %zu margins, %zu failed, min margin %.3g\n", r.suite.c_str(), r.margins.size(),
               failed.size(), r.margins.empty() ? 0.0 : r.min_margin());
  return failed.empty() ? kOk : kFailures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative entropy of entanglement and its measurement-restricted variants"};
  app.require_subcommand(1);

  GenArgs g;
  auto* gen = app.add_subcommand("gen", "write a state file");
  gen->add_option("kind", g.kind, "bell, ghz, werner, tiles, ginibre, separable")->required();
  gen->add_option("--dims", g.dims, "local dimensions, e.g. 2,2")->delimiter(',');
  gen->add_option("--rank", g.rank, "ginibre rank (default: full)");
  gen->add_option("--parties", g.parties, "ghz party count");
  gen->add_option("--lambda", g.lambda, "werner weight on phi+");
  gen->add_option("--terms", g.terms, "separable mixture size (default: 2D)");
  gen->add_option("--seed", g.seed, "random seed");
  gen->add_option("-o,--out", g.out, "output path (default: stdout)");

  ComputeArgs ra;
  auto* ree = app.add_subcommand("ree", "relative entropy of entanglement");
  ComputeArgs rr;
  auto* rree = app.add_subcommand("rree", "measurement-restricted relative entropy of entanglement");
  for (auto [cmd, a] : {std::pair{ree, &ra}, std::pair{rree, &rr}}) {
    cmd->add_option("state", a->state, "state file")->required();
    cmd->add_option("--set", a->set, "reference set: sep or ppt");
    cmd->add_option("--groups", a->groups, "party grouping, e.g. '0,2;1,3' (default: every party alone)");
    cmd->add_option("--config", a->config, "RunConfig JSON");
    cmd->add_option("--seed", a->seed, "random seed");
    cmd->add_option("-o,--out", a->out, "result path (default: stdout)");
    cmd->add_option("--witness", a->witness, "witness state path (default: next to --out)");
  }
  ree->add_flag("--require-convergence", ra.require_convergence, "exit 3 unless the duality gap closed");
  rree->add_option("--class", rr.cls, "measurement class: lo, locc1, sep, ppt, all");
  rree->add_option("--budgets", rr.budgets, "outcomes per group, e.g. 4,4")->delimiter(',');
  rree->add_option("--witness-measurement", rr.witness_measurement, "witness POVM path (default: next to --out)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", va.suite, "proof-chain, theorem1, theorem2, mutual")->required();
  verify->add_option("--samples", va.samples, "instance count");
  verify->add_option("--seed", va.seed, "random seed");
  verify->add_option("--threads", va.threads, "worker threads");
  verify->add_option("--config", va.config, "RunConfig JSON");
  verify->add_option("-o,--out", va.out, "report JSON path (default: stdout)");
  verify->add_option("--csv", va.csv, "report CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*gen) {
      const StateFile f = generate(g);
      write_or_print(state_json(f), g.out);
      return kOk;
    }
    if (*ree) return run_ree(ra, ree);
    if (*rree) return run_rree(rr, rree);
    if (*verify) return run_verify(va, verify);
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNotConverged;
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInputError;
  } catch (const Json::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInputError;
  }
  return kInputError;
}
