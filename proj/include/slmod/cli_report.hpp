#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slmod/complexes.hpp"
#include "slmod/theorem_registry.hpp"

namespace slmod {

inline const std::string kToolVersion = "1.0.0";

// Malformed command line or parameters; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  int N = 4;
  std::optional<int> p;
  Vector beta;
  Vector alpha;
  int window = 2;
  int r_bound = 1;
  std::uint64_t seed = 1;
  int probes = 100;
  std::string output;  // empty means stdout
  std::string format = "json";
  // per subcommand
  std::string id;
  std::string complex;
  std::string algebra = "H";
  std::string family = "MIN";
  bool fund = false;
  std::string special = "omit";
  std::string fiber = "lambda";
  std::vector<int> seed_fiber;
  int seed_index = 0;
  Vector vector;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline Vector parse_rational_vector(const std::string& s) {
  std::vector<Scalar> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(Scalar::parse(item));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (s.empty() || s.back() == ',') throw UsageError("empty entry in rational vector: '" + s + "'");
  Vector v(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) v[i] = out[i];
  return v;
}

inline std::string format_vector(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
  return s;
}

inline std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int x = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
    if (ec != std::errc() || end != item.data() + item.size()) throw UsageError("expected integers: '" + s + "'");
    out.push_back(x);
  }
  return out;
}

namespace detail {

inline bool algebra_ok(const std::string& a) { return a == "H" || a == "W" || a == "S"; }

inline FamilyKind parse_family(const std::string& s) {
  if (s == "MIN") return FamilyKind::Min;
  if (s == "FULLW") return FamilyKind::FullW;
  if (s == "INT") return FamilyKind::Int;
  if (s == "MAX") return FamilyKind::Max;
  throw UsageError("unknown family: " + s);
}

inline void usage(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

inline void validate(RunConfig& c) {
  const auto& cmd = c.command;
  if (cmd == "frame") {
    usage(c.vector.size() >= 2 && c.vector.size() % 2 == 0, "frame: --vector needs an even number of entries");
    usage(!c.vector.is_zero(), "frame: --vector must be nonzero");
    c.N = static_cast<int>(c.vector.size());
  }
  usage(c.N >= 1 && c.N <= kMaxRank, "N out of range");
  const auto n = static_cast<std::size_t>(c.N);
  if (c.beta.size() == 0) c.beta = Vector(n);
  if (c.alpha.size() == 0) c.alpha = Vector(n);
  usage(c.beta.size() == n, "beta must have N = " + std::to_string(c.N) + " entries");
  usage(c.alpha.size() == n, "alpha must have N = " + std::to_string(c.N) + " entries");
  usage(c.window >= 0 && c.window <= 4, "window must be in [0, 4]");
  usage(c.r_bound >= 1 && c.r_bound <= 2, "R bound must be 1 or 2");
  usage(c.probes >= 0, "probes must be nonnegative");
  usage(c.format == "json" || c.format == "csv" || c.format == "text", "format must be json, csv or text");
  if (c.p) usage(*c.p >= 0 && *c.p <= c.N, "p must be in [0, N]");
  if (cmd == "check") {
    usage(!c.id.empty(), "check: --id is required");
    const detail::CatalogueEntry* e = nullptr;
    try {
      e = &catalogue_entry(c.id);
    } catch (const std::invalid_argument& err) {
      throw UsageError(err.what());
    }
    usage(e->pmode != PMode::Each || c.p.has_value(), c.id + ": --p is required");
    usage(e->valid(c.N, c.beta, c.p.value_or(1)), c.id + ": parameters outside the check's range (H checks need even N)");
  } else if (cmd == "dims") {
    usage(c.p.has_value(), "dims: --p is required");
    FamilyKind k = parse_family(c.family);
    usage(k == FamilyKind::FullW || c.N % 2 == 0, "dims: N must be even for the H families");
    usage(!c.fund || c.N % 2 == 0, "dims: --fund needs even N");
    usage(c.special == "omit" || c.special == "full", "dims: --special must be omit or full");
  } else if (cmd == "closure") {
    usage(algebra_ok(c.algebra), "closure: --algebra must be H, W or S");
    usage(c.algebra != "H" || c.N % 2 == 0, "closure: N must be even for H");
    usage(c.fiber == "lambda" || c.fiber == "fund" || c.fiber == "sym2", "closure: --fiber must be lambda, fund or sym2");
    usage(c.fiber == "sym2" || c.p.has_value(), "closure: --p is required");
    usage(c.fiber != "fund" || c.algebra == "H", "closure: fund fibers are for H");
    usage(c.seed_fiber.size() == n, "closure: --seed-fiber must have N entries");
    usage(std::all_of(c.seed_fiber.begin(), c.seed_fiber.end(), [&](int x) { return std::abs(x) <= c.window; }),
          "closure: --seed-fiber lies outside the window");
    usage(c.seed_index >= 0, "closure: --seed-index must be nonnegative");
  } else if (cmd == "homology") {
    ComplexId id;
    try {
      id = parse_complex(c.complex);
    } catch (const std::invalid_argument& err) {
      throw UsageError(err.what());
    }
    usage(c.p.has_value(), "homology: --p is required");
    usage(c.N % 2 == 0, "homology: N must be even for H");
    try {
      check_position(id, c.N, *c.p);
    } catch (const std::invalid_argument& err) {
      throw UsageError(err.what());
    }
  }
}

}  // namespace detail

// Parses argv (without the program name). Throws UsageError on anything malformed.
inline RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"exact checks for Shen-Larsson modules over H_N, W_N and S_N", "slmod"};
  app.require_subcommand(1);
  std::string beta, alpha, seed_fiber, vec;
  std::optional<int> p;
  auto common = [&](CLI::App* s) {
    s->add_option("--N", c.N, "rank N");
    s->add_option("--p", p, "exterior degree p");
    s->add_option("--beta", beta, "comma-separated rationals");
    s->add_option("--alpha", alpha, "comma-separated rationals");
    s->add_option("--window", c.window, "window radius d");
    s->add_option("--r-bound", c.r_bound, "sample r with max|r_i| <= bound");
    s->add_option("--seed", c.seed, "probe seed");
    s->add_option("--probes", c.probes, "random probes per check");
    s->add_option("--output", c.output, "output file");
    s->add_option("--format", c.format, "json, csv or text");
  };
  auto* check = app.add_subcommand("check", "run one catalogue check");
  common(check);
  check->add_option("--id", c.id, "check id")->required();
  auto* all = app.add_subcommand("check-all", "run the default grid");
  common(all);
  auto* dims = app.add_subcommand("dims", "fiber dimensions of a family");
  common(dims);
  dims->add_option("--family", c.family, "MIN, FULLW, INT or MAX");
  dims->add_flag("--fund", c.fund, "intersect with the fundamental subspace");
  dims->add_option("--special", c.special, "omit or full at k = -beta");
  auto* clo = app.add_subcommand("closure", "closure of one basis vector");
  common(clo);
  clo->add_option("--algebra", c.algebra, "H, W or S");
  clo->add_option("--fiber", c.fiber, "lambda, fund or sym2");
  clo->add_option("--seed-fiber", seed_fiber, "degree k of the seed")->required();
  clo->add_option("--seed-index", c.seed_index, "basis index in the fiber")->required();
  auto* hom = app.add_subcommand("homology", "fiberwise homology against the prediction");
  common(hom);
  hom->add_option("--complex", c.complex, "DERHAM, TCHAIN, FSQ or FSQ_FUND")->required();
  auto* frame = app.add_subcommand("frame", "symplectic frame through a vector");
  common(frame);
  frame->add_option("--vector", vec, "comma-separated rationals")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (auto* s : app.get_subcommands()) c.command = s->get_name();
  c.p = p;
  if (!beta.empty()) c.beta = parse_rational_vector(beta);
  if (!alpha.empty()) c.alpha = parse_rational_vector(alpha);
  if (!seed_fiber.empty()) c.seed_fiber = parse_int_list(seed_fiber);
  if (!vec.empty()) c.vector = parse_rational_vector(vec);
  detail::validate(c);
  return c;
}

// Flags that parse back to the same config.
inline std::vector<std::string> to_flags(const RunConfig& c) {
  std::vector<std::string> f{c.command};
  auto add = [&](const std::string& k, const std::string& v) {
    f.push_back(k);
    f.push_back(v);
  };
  if (c.command == "check") add("--id", c.id);
  if (c.command == "frame") {
    add("--vector", format_vector(c.vector));
  } else {
    add("--N", std::to_string(c.N));
  }
  if (c.p) add("--p", std::to_string(*c.p));
  add("--beta", format_vector(c.beta));
  add("--alpha", format_vector(c.alpha));
  add("--window", std::to_string(c.window));
  add("--r-bound", std::to_string(c.r_bound));
  add("--seed", std::to_string(c.seed));
  add("--probes", std::to_string(c.probes));
  if (!c.output.empty()) add("--output", c.output);
  add("--format", c.format);
  if (c.command == "dims") {
    add("--family", c.family);
    if (c.fund) f.push_back("--fund");
    add("--special", c.special);
  }
  if (c.command == "closure") {
    add("--algebra", c.algebra);
    add("--fiber", c.fiber);
    std::string k;
    for (std::size_t i = 0; i < c.seed_fiber.size(); ++i) k += (i ? "," : "") + std::to_string(c.seed_fiber[i]);
    add("--seed-fiber", k);
    add("--seed-index", std::to_string(c.seed_index));
  }
  if (c.command == "homology") add("--complex", c.complex);
  return f;
}

struct Summary {
  std::size_t pass = 0, fail = 0, skipped = 0;
};

struct ReportDocument {
  std::string version = kToolVersion;
  RunConfig config;
  std::vector<CheckResult> results;
  std::string timestamp;

  Summary summary() const {
    Summary s;
    for (const auto& r : results) {
      if (r.status == Status::Pass) ++s.pass;
      if (r.status == Status::Fail) ++s.fail;
      if (r.status == Status::Skipped) ++s.skipped;
    }
    return s;
  }
  int exit_code() const { return summary().fail ? 1 : 0; }
};

inline std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson value_json(const Value& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return *i;
  return std::get<std::string>(v);
}

inline ojson vector_json(const Vector& v) {
  ojson a = ojson::array();
  for (std::size_t i = 0; i < v.size(); ++i) a.push_back(v[i].to_string());
  return a;
}

inline ojson params_json(const CheckParams& c) {
  ojson j;
  j["N"] = c.N;
  j["p"] = c.p ? ojson(*c.p) : ojson(nullptr);
  j["beta"] = vector_json(c.beta);
  j["alpha"] = vector_json(c.alpha);
  j["window"] = c.window;
  j["r_bound"] = c.r_bound;
  j["seed"] = c.seed;
  j["probes"] = c.probes;
  return j;
}

inline ojson result_json(const CheckResult& r) {
  ojson j;
  j["check_id"] = r.check_id;
  j["params"] = params_json(r.params);
  j["status"] = to_string(r.status);
  j["note"] = r.note;
  ojson ds = ojson::array();
  for (const auto& d : r.details) {
    ojson x;
    x["degree"] = d.degree ? ojson(d.degree->k) : ojson::array();
    x["label"] = d.label;
    x["expected"] = value_json(d.expected);
    x["actual"] = value_json(d.actual);
    x["status"] = to_string(d.status);
    ds.push_back(std::move(x));
  }
  j["details"] = std::move(ds);
  return j;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string degree_text(const std::optional<Degree>& k) {
  if (!k) return "";
  std::string s;
  for (std::size_t i = 0; i < k->size(); ++i) s += (i ? " " : "") + std::to_string((*k)[i]);
  return s;
}

}  // namespace detail

inline std::string emit_json(const ReportDocument& doc) {
  detail::ojson j;
  j["version"] = doc.version;
  j["timestamp"] = doc.timestamp;
  j["config"] = {{"command", doc.config.command}, {"flags", to_flags(doc.config)}};
  detail::ojson rs = detail::ojson::array();
  for (const auto& r : doc.results) rs.push_back(detail::result_json(r));
  j["results"] = std::move(rs);
  Summary s = doc.summary();
  j["summary"] = {{"pass", s.pass}, {"fail", s.fail}, {"skipped", s.skipped}};
  return j.dump(2) + "\n";
}

inline std::string emit_csv(const ReportDocument& doc) {
  std::string out = "check_id,degree,expected,actual,status\n";
  for (const auto& r : doc.results)
    for (const auto& d : r.details)
      out += detail::csv_field(r.check_id) + "," + detail::degree_text(d.degree) + "," +
             detail::csv_field(to_string(d.expected)) + "," + detail::csv_field(to_string(d.actual)) + "," +
             to_string(d.status) + "\n";
  return out;
}

inline std::string emit_text(const ReportDocument& doc) {
  std::ostringstream os;
  os << "slmod " << doc.version << "  " << doc.config.command << "  " << doc.timestamp << "\n";
  for (const auto& r : doc.results) {
    const auto& c = r.params;
    os << to_string(r.status) << "  " << r.check_id << "  N=" << c.N;
    if (c.p) os << " p=" << *c.p;
    os << " beta=" << c.beta.to_string() << " d=" << c.window;
    os << "  (" << r.details.size() << " records";
    if (!r.note.empty()) os << "; " << r.note;
    os << ")\n";
    std::size_t shown = 0;
    for (const auto& d : r.details) {
      if (d.status != Status::Fail || shown == 5) continue;
      ++shown;
      os << "    k=[" << detail::degree_text(d.degree) << "] " << d.label << ": expected " << to_string(d.expected)
         << ", actual " << to_string(d.actual) << "\n";
    }
  }
  Summary s = doc.summary();
  os << "summary: pass " << s.pass << ", fail " << s.fail << ", skipped " << s.skipped << "\n";
  return os.str();
}

inline std::string emit(const ReportDocument& doc, const std::string& format) {
  if (format == "json") return emit_json(doc);
  if (format == "csv") return emit_csv(doc);
  if (format == "text") return emit_text(doc);
  throw UsageError("unknown format: " + format);
}

// Worker count: hardware threads, capped by SLMOD_WORKERS when set.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SLMOD_WORKERS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

// Runs the jobs on a small pool; results come back in job order.
inline std::vector<CheckResult> run_all(const std::vector<std::pair<std::string, CheckParams>>& jobs,
                                        unsigned workers = worker_count()) {
  std::vector<CheckResult> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) out[i] = run_check(jobs[i].first, jobs[i].second);
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  if (workers == 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

namespace detail {

inline CheckParams params_of(const RunConfig& c) {
  CheckParams p = CheckParams::make(c.N, c.p, c.beta, c.window);
  p.alpha = c.alpha;
  p.r_bound = c.r_bound;
  p.seed = c.seed;
  p.probes = c.probes;
  return p;
}

inline AlgebraKind algebra_of(const std::string& a) {
  return a == "H" ? AlgebraKind::H : a == "W" ? AlgebraKind::W : AlgebraKind::S;
}

inline CheckResult dims_result(const RunConfig& c) {
  CheckParams params = params_of(c);
  FamilySpec fs{parse_family(c.family), c.fund, c.special == "full" ? SpecialPolicy::Full : SpecialPolicy::Omit};
  AlgebraKind kind = c.N % 2 == 0 ? AlgebraKind::H : AlgebraKind::W;
  auto spec = ActionSpec::make(kind, c.N, c.beta, FiberType::lambda(*c.p), c.alpha);
  Window w(c.N, c.window);
  GradedFamily fam = build_family(spec, fs, w);
  Report rep;
  const std::string label = c.family + (c.fund ? " on Fund" : "") + " fiber dim";
  for (std::size_t i = 0; i < w.size(); ++i) {
    Degree k = w.degree(i);
    Vector kb = shifted(k, c.beta);
    std::size_t got = fam.fibers[i].dim();
    if (kb.is_zero()) {
      std::size_t whole = c.fund ? fundamental_subspace(c.N, *c.p).dim() : binom(c.N, *c.p);
      rep.expect(k, label + " (special fiber)", dim_value(fs.special == SpecialPolicy::Full ? whole : 0), dim_value(got));
      continue;
    }
    if (c.fund) {
      // no independent oracle on Fund; record the value
      rep.add({k, label, std::string("n/a"), dim_value(got), Status::Pass});
      continue;
    }
    OracleDims o = oracle_fiber_dims(c.N, *c.p, kb);
    std::optional<std::size_t> want;
    switch (fs.kind) {
      case FamilyKind::Min: want = o.min; break;
      case FamilyKind::Max: want = o.max; break;
      case FamilyKind::FullW: want = o.fullw; break;
      case FamilyKind::Int: want = o.intm; break;
    }
    rep.expect(k, label + " vs oracle", want ? dim_value(*want) : Value(std::string("undefined")), dim_value(got));
  }
  return {"dims", params, rep.status(), std::move(rep.details), ""};
}

inline CheckResult closure_result(const RunConfig& c) {
  CheckParams params = params_of(c);
  FiberType ft = c.fiber == "sym2"   ? FiberType::sym2()
                 : c.fiber == "fund" ? FiberType::fund(*c.p)
                                     : FiberType::lambda(*c.p);
  AlgebraKind kind = algebra_of(c.algebra);
  ActionSpec spec = [&] {
    try {
      return ActionSpec::make(kind, c.N, c.beta, ft, c.alpha);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  Subspace whole = ft.whole(c.N);
  if (static_cast<std::size_t>(c.seed_index) >= whole.dim())
    throw UsageError("closure: --seed-index must be below " + std::to_string(whole.dim()));
  Window w(c.N, c.window);
  auto samples = sample_set(c.N, c.r_bound);
  Degree k0(c.seed_fiber);
  GradedFamily fam = closure(spec, {{k0, whole.basis_vector(static_cast<std::size_t>(c.seed_index))}}, w, samples);
  Report rep;
  for (std::size_t i = 0; i < w.size(); ++i)
    rep.add({w.degree(i), "closure dim (expected column: whole fiber)", dim_value(whole.dim()),
             dim_value(fam.fibers[i].dim()), Status::Pass});
  rep.append(is_invariant(fam, samples), "invariance");
  return {"closure", params, rep.status(), std::move(rep.details), kDeskScale};
}

inline CheckResult homology_result(const RunConfig& c) {
  ComplexId id = parse_complex(c.complex);
  Report rep = compare_with_prediction(id, c.N, *c.p, c.beta, Window(c.N, c.window));
  return {"homology:" + c.complex, params_of(c), rep.status(), std::move(rep.details), ""};
}

inline CheckResult frame_result(const RunConfig& c) {
  SymplecticFrame f = symplectic_extend(c.vector);
  Report rep;
  const std::size_t N = f.size();
  rep.expect(std::nullopt, "first frame vector", c.vector.to_string(), f[0].to_string());
  for (std::size_t i = 1; i < N; ++i) rep.add({std::nullopt, "w_" + std::to_string(i), std::string(""), f[i].to_string(), Status::Pass});
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      Scalar want = (i % 2 == 0 && j == i + 1) ? Scalar(1) : Scalar(0);
      rep.expect(std::nullopt, "(bar f" + std::to_string(i) + " | f" + std::to_string(j) + ")", want.to_string(),
                 sympl_form(f[i], f[j]).to_string());
    }
  return {"frame", params_of(c), rep.status(), std::move(rep.details), ""};
}

}  // namespace detail

// Runs a validated config into a report document.
inline ReportDocument execute(const RunConfig& c) {
  ReportDocument doc;
  doc.config = c;
  doc.timestamp = utc_timestamp();
  if (c.command == "check") {
    doc.results.push_back(run_check(c.id, detail::params_of(c)));
  } else if (c.command == "check-all") {
    auto jobs = default_grid();
    for (auto& [id, p] : jobs) {
      p.seed = c.seed;
      p.probes = c.probes;
      p.r_bound = c.r_bound;
    }
    doc.results = run_all(jobs);
  } else if (c.command == "dims") {
    doc.results.push_back(detail::dims_result(c));
  } else if (c.command == "closure") {
    doc.results.push_back(detail::closure_result(c));
  } else if (c.command == "homology") {
    doc.results.push_back(detail::homology_result(c));
  } else if (c.command == "frame") {
    doc.results.push_back(detail::frame_result(c));
  } else {
    throw UsageError("unknown command: " + c.command);
  }
  return doc;
}

// The whole CLI; returns the exit code.
inline int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  try {
    c = parse_config(args);
  } catch (const CLI::CallForHelp&) {
    out << "usage: slmod <check|check-all|dims|closure|homology|frame> [options]; see README\n";
    return 0;
  } catch (const UsageError& e) {
    err << "slmod: " << e.what() << "\n";
    return 2;
  }
  ReportDocument doc;
  try {
    doc = execute(c);
  } catch (const UsageError& e) {
    err << "slmod: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "slmod: " << e.what() << "\n";
    return 2;
  }
  std::string bytes = emit(doc, c.format);
  if (c.output.empty()) {
    out << bytes;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    f << bytes;
    if (!f) {
      err << "slmod: cannot write " << c.output << "\n";
      return 2;
    }
  }
  return doc.exit_code();
}

}  // namespace slmod
