#ifndef REENT_IO_HPP
#define REENT_IO_HPP

// JSON and CSV forms of states, POVMs, run configurations and results.
// Doubles are written in shortest round-trip form, so parse(emit(x)) == x
// bit for bit.

#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "reent/verify.hpp"

namespace reent {

using Json = nlohmann::ordered_json;

inline constexpr const char* kStateFormat = "reent-state/1";
inline constexpr const char* kPovmFormat = "reent-povm/1";

struct StateMetadata {
  std::string name;
  std::optional<std::uint64_t> seed;
  std::string generator;
};

struct StateFile {
  DensityOperator state;
  std::optional<SeparableDecomposition> witness;
  StateMetadata metadata;
};

namespace io {

[[noreturn]] inline void fail(const std::string& what, const std::string& where) {
  throw InputError(where + ": " + what);
}

inline Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_json(v(k)));
  return out;
}

inline double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail("expected a number", where);
  return j.get<double>();
}

inline Complex complex_of(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    fail("expected an object with 're' and 'im'", where);
  return {number(j["re"], where + ".re"), number(j["im"], where + ".im")};
}

inline Matrix matrix_of(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail("expected a nonempty array of rows", where);
  const auto n = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  Matrix m;
  for (Eigen::Index r = 0; r < n; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array()) fail("row " + std::to_string(r) + " is not an array", where);
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      m.resize(n, cols);
    }
    if (static_cast<Eigen::Index>(row.size()) != cols) fail("rows differ in length (shape invariant)", where);
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = complex_of(row[static_cast<std::size_t>(c)], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

inline Vector vector_of(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail("expected a nonempty array", where);
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = complex_of(j[k], where);
  return v;
}

inline Dims dims_of(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail("expected a nonempty list of local dimensions", where);
  std::vector<int> d;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<int>() < 1) fail("local dimensions must be positive integers", where);
    d.push_back(x.get<int>());
  }
  return Dims(std::move(d));
}

inline Json dims_json(const Dims& d) {
  Json out = Json::array();
  for (int j = 0; j < d.parties(); ++j) out.push_back(d[j]);
  return out;
}

inline Json partition_json(const Partition& p) {
  Json out = Json::array();
  for (const auto& g : p.groups()) out.push_back(g);
  return out;
}

inline Partition partition_of(const Json& j, const std::string& where) {
  if (!j.is_array()) fail("expected a list of party groups", where);
  std::vector<std::vector<int>> g;
  for (const auto& grp : j) {
    if (!grp.is_array()) fail("each group must be a list of parties", where);
    std::vector<int> h;
    for (const auto& x : grp) {
      if (!x.is_number_integer()) fail("parties are integers", where);
      h.push_back(x.get<int>());
    }
    g.push_back(std::move(h));
  }
  return Partition(std::move(g));
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'", where);
  return j[key];
}

inline Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("write to '" + path + "' failed");
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// 17 significant digits; enough to round-trip any double.
inline std::string decimal(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace io

inline Json decomposition_json(const SeparableDecomposition& d) {
  Json terms = Json::array();
  for (std::size_t k = 0; k < d.weights.size(); ++k) {
    Json locals = Json::array();
    for (const auto& v : d.locals[k]) locals.push_back(io::vector_json(v));
    terms.push_back(Json{{"weight", d.weights[k]}, {"locals", std::move(locals)}});
  }
  return Json{{"partition", io::partition_json(d.partition)}, {"terms", std::move(terms)}};
}

inline SeparableDecomposition decomposition_of(const Json& j, const Dims& dims, const std::string& where) {
  SeparableDecomposition d{dims, io::partition_of(io::field(j, "partition", where), where + ".partition"), {}, {}};
  d.partition.validate(dims);
  const Json& terms = io::field(j, "terms", where);
  if (!terms.is_array() || terms.empty()) io::fail("expected a nonempty list of terms", where + ".terms");
  for (const auto& t : terms) {
    d.weights.push_back(io::number(io::field(t, "weight", where), where + ".weight"));
    std::vector<Vector> loc;
    for (const auto& v : io::field(t, "locals", where)) loc.push_back(io::vector_of(v, where + ".locals"));
    d.locals.push_back(std::move(loc));
  }
  return d;
}

inline Json state_json(const StateFile& f) {
  Json j{{"format", kStateFormat}, {"dims", io::dims_json(f.state.dims())}, {"matrix", io::matrix_json(f.state.matrix())}};
  if (f.witness) j["witness"] = decomposition_json(*f.witness);
  Json meta{{"name", f.metadata.name}, {"generator", f.metadata.generator}};
  if (f.metadata.seed) meta["seed"] = *f.metadata.seed;
  j["metadata"] = std::move(meta);
  return j;
}

/// Validates the state (trace, Hermiticity, positivity at 1e-8) and any
/// witness (reassembly within 1e-9), naming the failing invariant.
inline StateFile state_of(const Json& j, const std::string& where = "state") {
  if (!j.is_object()) io::fail("expected a JSON object", where);
  if (j.contains("format") && j["format"] != kStateFormat)
    io::fail("unsupported format '" + j["format"].dump() + "'", where);
  const Dims dims = io::dims_of(io::field(j, "dims", where), where + ".dims");
  const Matrix m = io::matrix_of(io::field(j, "matrix", where), where + ".matrix");
  if (m.rows() != dims.total() || m.cols() != dims.total())
    io::fail("dims " + to_string(dims) + " need a " + std::to_string(dims.total()) + "x" + std::to_string(dims.total()) +
                 " matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " (dimension invariant)",
             where);
  StateFile f{DensityOperator(m, dims, 1e-8), std::nullopt, {}};
  if (j.contains("witness")) {
    SeparableDecomposition d = decomposition_of(j["witness"], dims, where + ".witness");
    const Matrix a = d.validated_assembly();
    const double err = (a - f.state.matrix()).cwiseAbs().maxCoeff();
    if (err > 1e-9)
      io::fail("separable witness reassembles with error " + io::decimal(err) + " > 1e-9 (witness invariant)", where);
    f.witness = std::move(d);
  }
  if (j.contains("metadata")) {
    const Json& meta = j["metadata"];
    if (meta.contains("name")) f.metadata.name = meta["name"].get<std::string>();
    if (meta.contains("generator")) f.metadata.generator = meta["generator"].get<std::string>();
    if (meta.contains("seed")) f.metadata.seed = meta["seed"].get<std::uint64_t>();
  }
  return f;
}

inline StateFile parse_state(const std::string& path) { return state_of(io::read_json(path), path); }

inline void emit_state(const StateFile& f, const std::string& path) { io::write_text(path, io::dump(state_json(f))); }

inline Json povm_json(const Povm& m) {
  Json eff = Json::array();
  for (const auto& e : m.effects) eff.push_back(io::matrix_json(e));
  Json j{{"format", kPovmFormat}, {"dims", io::dims_json(m.dims)}, {"class", to_string(m.tag)}, {"effects", std::move(eff)}};
  auto list = [](const std::vector<Matrix>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(io::matrix_json(x));
    return a;
  };
  if (m.local) {
    Json f = Json::array();
    for (const auto& p : *m.local) f.push_back(list(p));
    j["structure"] = Json{{"local", std::move(f)}};
  } else if (m.one_way) {
    Json second = Json::array();
    for (const auto& stage : m.one_way->second) {
      Json s = Json::array();
      for (const auto& p : stage) s.push_back(list(p));
      second.push_back(std::move(s));
    }
    j["structure"] = Json{{"one_way", Json{{"first", m.one_way->first},
                                           {"first_povm", list(m.one_way->first_povm)},
                                           {"second", std::move(second)}}}};
  } else if (m.terms) {
    Json t = Json::array();
    for (const auto& e : *m.terms) {
      Json terms = Json::array();
      for (const auto& term : e) terms.push_back(list(term));
      t.push_back(std::move(terms));
    }
    j["structure"] = Json{{"terms", std::move(t)}};
  }
  return j;
}

/// Rebuilds a POVM and rejects it unless validate_povm passes for its tag.
inline Povm povm_of(const Json& j, const std::string& where = "povm") {
  if (j.contains("format") && j["format"] != kPovmFormat)
    io::fail("unsupported format '" + j["format"].dump() + "'", where);
  const Dims dims = io::dims_of(io::field(j, "dims", where), where + ".dims");
  MeasurementClass tag;
  try {
    tag = parse_measurement_class(io::field(j, "class", where).get<std::string>());
  } catch (const Json::exception&) {
    io::fail("class must be a string", where);
  }
  auto list = [&](const Json& a, const std::string& w) {
    std::vector<Matrix> out;
    if (!a.is_array()) io::fail("expected a list of matrices", w);
    for (const auto& x : a) out.push_back(io::matrix_of(x, w));
    return out;
  };
  Povm m = Povm::from_effects(dims, list(io::field(j, "effects", where), where + ".effects"), tag);
  if (j.contains("structure")) {
    const Json& s = j["structure"];
    const std::string w = where + ".structure";
    if (s.contains("local")) {
      std::vector<std::vector<Matrix>> f;
      for (const auto& p : s["local"]) f.push_back(list(p, w + ".local"));
      m.local = std::move(f);
    } else if (s.contains("one_way")) {
      const Json& o = s["one_way"];
      OneWayStructure ow;
      ow.first = io::field(o, "first", w).get<int>();
      ow.first_povm = list(io::field(o, "first_povm", w), w + ".first_povm");
      for (const auto& stage : io::field(o, "second", w)) {
        std::vector<std::vector<Matrix>> st;
        for (const auto& p : stage) st.push_back(list(p, w + ".second"));
        ow.second.push_back(std::move(st));
      }
      m.one_way = std::move(ow);
    } else if (s.contains("terms")) {
      ProductTerms t;
      for (const auto& e : s["terms"]) {
        std::vector<std::vector<Matrix>> terms;
        for (const auto& term : e) terms.push_back(list(term, w + ".terms"));
        t.push_back(std::move(terms));
      }
      m.terms = std::move(t);
    }
  }
  const PovmReport r = validate_povm(m, 1e-8);
  if (!r.complete) io::fail("effects sum to the identity only within " + io::decimal(r.completeness_error) + " (completeness invariant)", where);
  if (!r.positive) io::fail("an effect has eigenvalue " + io::decimal(r.min_eigenvalue) + " (positivity invariant)", where);
  if (!r.structure) io::fail(r.structure_detail + " (class-structure invariant)", where);
  return m;
}

inline Povm parse_povm(const std::string& path) { return povm_of(io::read_json(path), path); }

inline void emit_povm(const Povm& m, const std::string& path) { io::write_text(path, io::dump(povm_json(m))); }

/// Everything a run can be configured with. Every field is optional in the
/// file; unknown keys are rejected and numbers must be positive.
struct RunConfig {
  ReferenceKind reference = ReferenceKind::Sep;
  MeasurementClass measurement = MeasurementClass::Sep;
  std::vector<int> budgets;
  double gap_tolerance = 1e-5;
  int max_iterations = 2000;
  int lmo_restarts = 20;
  int rounds = 30;
  double outer_tolerance = 1e-5;
  std::optional<double> certificate_gap;  // default: 1e-4 for rree, 5e-4 in verify suites
  int restarts = 10;
  int ascent_iterations = 500;
  int round_restarts = 2;
  int samples = 20;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string output;
  std::string csv;

  SolverConfig solver() const {
    SolverConfig c;
    c.gap_tolerance = gap_tolerance;
    c.max_iterations = max_iterations;
    c.lmo.restarts = lmo_restarts;
    c.seed = seed;
    return c;
  }

  RestrictedConfig restricted() const {
    RestrictedConfig c;
    c.solver = solver();
    c.ascent.restarts = restarts;
    c.ascent.iterations = ascent_iterations;
    c.ascent.seed = seed;
    c.rounds = rounds;
    c.round_restarts = round_restarts;
    c.tolerance = outer_tolerance;
    if (certificate_gap) c.gap_tolerance = *certificate_gap;
    return c;
  }

  MeasurementClassSpec measurement_spec() const { return {measurement, budgets}; }

  VerifyConfig verify() const {
    VerifyConfig v;
    v.seed = seed;
    v.threads = threads;
    v.reference = reference;
    v.measurement = measurement_spec();
    v.solver = solver();
    const double suite_gap = v.restricted.gap_tolerance;
    v.restricted = restricted();
    if (!certificate_gap) v.restricted.gap_tolerance = suite_gap;
    return v;
  }
};

inline ReferenceKind parse_reference_kind(const std::string& s) {
  if (s == "sep") return ReferenceKind::Sep;
  if (s == "ppt") return ReferenceKind::Ppt;
  throw InputError("unknown reference set '" + s + "' (expected sep or ppt)");
}

inline Json config_json(const RunConfig& c) {
  return Json{{"reference", to_string(c.reference)},
              {"class", to_string(c.measurement)},
              {"budgets", c.budgets},
              {"gap_tolerance", c.gap_tolerance},
              {"max_iterations", c.max_iterations},
              {"lmo_restarts", c.lmo_restarts},
              {"rounds", c.rounds},
              {"outer_tolerance", c.outer_tolerance},
              {"certificate_gap", c.certificate_gap ? Json(*c.certificate_gap) : Json(nullptr)},
              {"restarts", c.restarts},
              {"ascent_iterations", c.ascent_iterations},
              {"round_restarts", c.round_restarts},
              {"samples", c.samples},
              {"seed", c.seed},
              {"threads", c.threads},
              {"output", c.output},
              {"csv", c.csv}};
}

inline RunConfig config_of(const Json& j, RunConfig c = {}, const std::string& where = "config") {
  if (!j.is_object()) io::fail("expected a JSON object", where);
  static const std::set<std::string> known{"reference", "class", "budgets", "gap_tolerance", "max_iterations",
                                           "lmo_restarts", "rounds", "outer_tolerance", "certificate_gap",
                                           "restarts", "ascent_iterations", "round_restarts", "samples", "seed",
                                           "threads", "output", "csv"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) io::fail("unknown key '" + k + "'", where);
  auto positive = [&](const char* k, auto& slot) {
    if (!j.contains(k)) return;
    const Json& v = j[k];
    using T = std::decay_t<decltype(slot)>;
    if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number() || !(v.get<double>() > 0)) io::fail(std::string("'") + k + "' must be a positive number", where);
      slot = v.get<double>();
    } else {
      if (!v.is_number_integer() || v.get<long long>() <= 0)
        io::fail(std::string("'") + k + "' must be a positive integer", where);
      slot = v.get<T>();
    }
  };
  auto text = [&](const char* k) -> std::optional<std::string> {
    if (!j.contains(k)) return std::nullopt;
    if (!j[k].is_string()) io::fail(std::string("'") + k + "' must be a string", where);
    return j[k].get<std::string>();
  };
  if (auto s = text("reference")) c.reference = parse_reference_kind(*s);
  if (auto s = text("class")) c.measurement = parse_measurement_class(*s);
  if (j.contains("budgets")) {
    if (!j["budgets"].is_array()) io::fail("'budgets' must be a list", where);
    c.budgets.clear();
    for (const auto& b : j["budgets"]) {
      if (!b.is_number_integer() || b.get<int>() < 1) io::fail("'budgets' entries must be positive integers", where);
      c.budgets.push_back(b.get<int>());
    }
  }
  positive("gap_tolerance", c.gap_tolerance);
  positive("max_iterations", c.max_iterations);
  positive("lmo_restarts", c.lmo_restarts);
  positive("rounds", c.rounds);
  positive("outer_tolerance", c.outer_tolerance);
  if (j.contains("certificate_gap")) {
    double g = 0;
    positive("certificate_gap", g);
    c.certificate_gap = g;
  }
  positive("restarts", c.restarts);
  positive("ascent_iterations", c.ascent_iterations);
  positive("round_restarts", c.round_restarts);
  positive("samples", c.samples);
  positive("seed", c.seed);
  positive("threads", c.threads);
  if (auto s = text("output")) c.output = *s;
  if (auto s = text("csv")) c.csv = *s;
  return c;
}

inline RunConfig parse_config(const std::string& path, RunConfig base = {}) {
  return config_of(io::read_json(path), std::move(base), path);
}

inline Json optimization_json(const OptimizationResult& r, const std::string& witness_path) {
  return Json{{"value", r.value},
              {"lower_bound", r.lower_bound},
              {"bound_direction", to_string(r.bound_direction)},
              {"iterations", r.iterations},
              {"gap", r.gap},
              {"converged", r.converged},
              {"witness", witness_path},
              {"trace", r.trace}};
}

inline Json certified_json(const CertifiedValue& v, const std::string& state_path, const std::string& measurement_path) {
  return Json{{"estimate", v.estimate},
              {"certified_lower", v.certified_lower},
              {"reference_upper", v.reference_upper},
              {"rounds", v.rounds},
              {"witness_state", state_path},
              {"witness_measurement", measurement_path},
              {"measurement_outcomes", v.witness_measurement.size()},
              {"measurement_class", to_string(v.witness_measurement.tag)},
              {"estimate_trace", v.estimate_trace},
              {"lower_trace", v.lower_trace}};
}

inline Json report_json(const VerificationReport& r) {
  Json margins = Json::array();
  for (const auto& m : r.margins)
    margins.push_back(Json{{"instance", m.instance},
                           {"label", m.label},
                           {"kind", to_string(m.kind)},
                           {"lhs", m.lhs},
                           {"rhs", m.rhs},
                           {"margin", m.margin},
                           {"tolerance", m.tolerance},
                           {"failed", m.failed()}});
  Json config = Json::object();
  for (const auto& [k, v] : r.config) config[k] = v;
  const auto f = r.failures();
  return Json{{"suite", r.suite},
              {"instances", r.instances},
              {"seed", r.seed},
              {"min_margin", r.margins.empty() ? Json(nullptr) : Json(r.min_margin())},
              {"failures", f.size()},
              {"failed_rows", f},
              {"config", std::move(config)},
              {"margins", std::move(margins)}};
}

inline constexpr const char* kReportCsvHeader = "suite,instance,label,kind,lhs,rhs,margin,tolerance,failed";

inline std::string report_csv(const VerificationReport& r) {
  std::ostringstream out;
  out << kReportCsvHeader << "\n";
  for (const auto& m : r.margins)
    out << r.suite << ',' << m.instance << ',' << m.label << ',' << to_string(m.kind) << ',' << io::decimal(m.lhs)
        << ',' << io::decimal(m.rhs) << ',' << io::decimal(m.margin) << ',' << io::decimal(m.tolerance) << ','
        << (m.failed() ? 1 : 0) << "\n";
  return out.str();
}

}  // namespace reent

#endif  // REENT_IO_HPP
