#include "commands.hpp"

#include "goldshift/criteria.hpp"
#include "goldshift/errors.hpp"
#include "goldshift/io.hpp"
#include "goldshift/ratio_set.hpp"
#include "goldshift/rn.hpp"
#include "goldshift/rng.hpp"
#include "goldshift/torus.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace goldshift::app {

namespace {

std::string num(double v) { return to_decimal(v); }
std::string num(const Real& v) { return to_decimal(v); }
std::string num(const BigInt& v) { return v.str(); }
std::string num(std::uint64_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

Json meta(const std::string& command, const RunConfig& cfg) {
  Json m{{"command", command},
         {"config_hash", config_hash(cfg)},
         {"seed", num(cfg.seed)},
         {"seed_source", cfg.seed_source}};
  Json settings = Json::object();
  std::istringstream canon(canonical_config(cfg));
  for (std::string line; std::getline(canon, line);) {
    const auto eq = line.find('=');
    settings[line.substr(0, eq)] = line.substr(eq + 1);
  }
  m["config"] = settings;
  if (cfg.timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::ostringstream ts;
    ts << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
    m["timestamp"] = ts.str();
  }
  return m;
}

Json new_report(const std::string& command, const RunConfig& cfg) {
  return Json{{"schema", kReportSchema},
              {"schema_version", num(kReportSchemaVersion)},
              {"meta", meta(command, cfg)},
              {"sections", Json::object()}};
}

Profile profile_of(const RunConfig& cfg) {
  Profile p = parse_mode(cfg.profile) == Mode::Desk ? Profile::desk() : Profile::full();
  p.lambda1 = cfg.lambda1;
  p.precision_bits = cfg.precision;
  return p;
}

Construction load(const RunConfig& cfg) {
  if (cfg.spec) return read_spec_file(*cfg.spec);
  return build_measure_spec(cfg.levels, profile_of(cfg));
}

Json to_ordered(const nlohmann::json& j) { return Json::parse(j.dump()); }

std::string csv_join(std::initializer_list<std::string> cells) {
  std::string s;
  for (const auto& c : cells) s += (s.empty() ? "" : ",") + c;
  return s + "\n";
}

Word symmetric_cylinder(const std::string& digits) {
  const auto half = static_cast<long long>(digits.size() / 2);
  return Word::parse(digits, -half);
}

// ---- construct ------------------------------------------------------------

Json conditions_json(const ConditionReport& rep) {
  Json arr = Json::array();
  for (const auto& e : rep.entries)
    arr.push_back(Json{{"level", num(e.level)},
                       {"name", e.name},
                       {"status", status_name(e.status)},
                       {"strict", e.strict},
                       {"slack", e.slack},
                       {"detail", e.detail}});
  return arr;
}

// ---- verify ---------------------------------------------------------------

Json nonsingularity_section(const Construction& c, std::string* csv) {
  const auto h = hellinger_criterion(c);
  Json terms = Json::array(), partial = Json::array();
  *csv = csv_join({"level", "term", "partial_sum"});
  for (std::size_t i = 0; i < h.terms.size(); ++i) {
    terms.push_back(num(h.terms[i]));
    partial.push_back(num(h.partial_sums[i]));
    *csv += csv_join({num(static_cast<int>(i + 1)), num(h.terms[i]), num(h.partial_sums[i])});
  }
  return Json{{"verdict", h.verdict()},
              {"positive", h.summable()},
              {"horizon", num(h.horizon)},
              {"terms", terms},
              {"partial_sums", partial},
              {"sum", h.partial_sums.empty() ? std::string("0") : num(h.partial_sums.back())},
              {"tail_rule", h.tail_rule},
              {"tail_bound", h.divergent() ? std::string("inf") : num(h.tail_bound)},
              {"tolerance", num(h.tolerance)},
              {"tail_within_tolerance", h.tail_within_tolerance()}};
}

Json exactness_section(const Construction& c) {
  const auto e3 = exactness_constant(c.spec, 3);
  const auto e1 = exactness_constant(c.spec, 1);
  Json worst = Json::array();
  for (int l : e3.worst) worst.push_back(num(l));
  return Json{{"verdict", e3.constant > 0 ? "exact" : "not established"},
              {"positive", e3.constant > 0},
              {"window", num(e3.window)},
              {"constant", num(e3.constant)},
              {"patterns", num(static_cast<std::uint64_t>(e3.patterns))},
              {"worst_pattern", worst},
              {"window1_constant", num(e1.constant)}};
}

Json conservativity_section(const Construction& c) {
  const auto r = conservativity_report(c.levels, c.profile);
  Json levels = Json::array();
  for (const auto& l : r.levels)
    levels.push_back(Json{{"level", num(l.level)},
                          {"status", status_name(l.status)},
                          {"log_term", num(l.log_term)},
                          {"log_partial_sum", num(l.log_partial_sum)},
                          {"partial_sum_ok", l.partial_ok}});
  const bool ok = r.holds();
  return Json{{"verdict", r.stationary ? "stationary (measure preserving)" : (ok ? "conservative" : "not established")},
              {"positive", ok},
              {"stationary", r.stationary},
              {"levels", levels}};
}

// ---- experiments ----------------------------------------------------------

bool section_failed(const Json& s) { return s.contains("pass") && !s.at("pass").get<bool>(); }

Json rn_section(const Construction& c, const RunConfig& cfg, std::string* csv) {
  const auto& sched = c.spec.schedule();
  const std::uint64_t trials = cfg.samples ? cfg.samples : 100;
  // Highest level whose admissible range N_t <= n < m_t is not empty.
  int t = static_cast<int>(c.levels.size());
  while (t > 0 && c.levels[static_cast<std::size_t>(t - 1)].m &&
         *c.levels[static_cast<std::size_t>(t - 1)].m <= c.levels[static_cast<std::size_t>(t - 1)].N)
    --t;
  const BigInt lo = t > 0 ? c.levels[static_cast<std::size_t>(t - 1)].N : BigInt(0);
  BigInt span = 20'000;
  if (t > 0 && c.levels[static_cast<std::size_t>(t - 1)].m)
    span = std::min(span, *c.levels[static_cast<std::size_t>(t - 1)].m - lo);
  if (sched.perturbed_end() + lo + span > BigInt(kWindowCap))
    throw CapExceeded("rn cross-check window beyond the sampling cap", (lo + span).str());

  *csv = csv_join({"trial", "n", "log_analytic", "eta_analytic", "log_direct", "eta_direct", "overlap"});
  std::uint64_t overlaps = 0;
  double max_diff = 0, max_eta_a = 0, max_eta_d = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(cfg.seed, i));
    const BigInt n = lo + BigInt(rng.below(static_cast<std::uint64_t>(span)));
    const BigInt K = std::max(last_contributing_index(sched, n), BigInt(0));
    const BigInt hi = std::max(K + 1, lo + n + 1);
    const Word x = sample_window(c.spec, 0, hi, rng.next());
    const RNResult a = rn_analytic(c.spec, x, n, t);
    const RNResult d = rn_direct(c.spec, x, n, K);
    const bool ok = a.overlaps(d);
    overlaps += ok;
    max_diff = std::max(max_diff, std::abs(a.log_value - d.log_value));
    max_eta_a = std::max(max_eta_a, a.eta);
    max_eta_d = std::max(max_eta_d, d.eta);
    *csv += csv_join({num(i), num(n), num(a.log_value), num(a.eta), num(d.log_value), num(d.eta), ok ? "1" : "0"});
  }
  return Json{{"truncation_level", num(t)},
              {"trials", num(trials)},
              {"overlaps", num(overlaps)},
              {"pass", overlaps == trials},
              {"max_abs_log_difference", num(max_diff)},
              {"max_eta_analytic", num(max_eta_a)},
              {"max_eta_direct", num(max_eta_d)}};
}

Json ratio_set_section(const Construction& c, const RunConfig& cfg, std::string* csv) {
  if (!c.levels.empty() && c.profile.mode != Mode::Desk)
    throw InputError("ratio-set runs require the desk profile (full-fidelity event masses are unsamplable)");
  RatioSetConfig rc;
  rc.j = cfg.j;
  rc.t = cfg.t;
  rc.eps = cfg.eps;
  rc.samples = cfg.samples ? cfg.samples : 100'000;
  rc.seed = cfg.seed;
  rc.threads = cfg.threads;
  rc.max_shifts = cfg.max_shifts;
  if (c.levels.empty()) rc.j = 0;
  const Word B = symmetric_cylinder(cfg.cylinder);
  const auto r = ratio_set_experiment(c, B, rc);

  *csv = csv_join({"l", "shift", "first_hits", "cumulative_hit_fraction"});
  std::uint64_t cum = 0;
  for (std::size_t l = 0; l < r.first_hit.size(); ++l) {
    cum += r.first_hit[l];
    *csv += csv_join({num(static_cast<std::uint64_t>(l + 1)), num(r.shift_unit * BigInt(l + 1)), num(r.first_hit[l]),
                      num(static_cast<double>(cum) / static_cast<double>(r.samples))});
  }
  Json s{{"cylinder", cfg.cylinder},
         {"j", num(r.j)},
         {"t", num(r.t)},
         {"eps", num(r.eps)},
         {"target_log", num(r.log_target)},
         {"shift_unit", num(r.shift_unit)},
         {"shifts", num(r.shifts)},
         {"samples", num(r.samples)},
         {"hits", num(r.hits)},
         {"mu_B", num(r.mu_B)},
         {"estimate", num(r.estimate)},
         {"estimate_over_mu_B", num(r.estimate / r.mu_B)},
         {"confidence", num(r.confidence)},
         {"ci_low", num(r.ci_low)},
         {"ci_high", num(r.ci_high)},
         {"verdict", r.verdict()},
         {"inconclusive", r.verdict() == "inconclusive"}};
  const int t = r.t;
  if (t >= 2 && r.j >= 1 && r.j < t) {
    const auto w = witness_submass(c, B, r.j, t);
    s["witness_mass"] = Json{{"mass", num(w.mass)},
                             {"shift", num(w.shift)},
                             {"prefixes", num(static_cast<std::uint64_t>(w.prefixes))},
                             {"skipped_states", num(static_cast<std::uint64_t>(w.skipped))},
                             {"ci_low_exceeds_0.9_mass", r.ci_low > 0.9 * w.mass}};
  } else {
    s["witness_mass"] = Json{{"applicable", false}};
  }
  return s;
}

Json torus_section(const RunConfig& cfg, std::string* areas_csv, std::string* regions_csv) {
  if (cfg.depth > 10) throw InputError("torus pushforward depth must be <= 10");
  const auto& R = torus_partition();
  const double pi[3] = {1 / std::sqrt(5.0), 1 / (kPhi * std::sqrt(5.0)), 1 / (kPhi * std::sqrt(5.0))};
  Json parts = Json::array();
  QSqrt5 total = 0;
  double max_area_diff = 0;
  *areas_csv = csv_join({"region", "area", "stationary"});
  for (std::size_t i = 0; i < 3; ++i) {
    const QSqrt5 a = R[i].area();
    total += a;
    max_area_diff = std::max(max_area_diff, std::abs(a.to_double() - pi[i]));
    parts.push_back(Json{{"region", num(static_cast<int>(i + 1))},
                         {"area_exact", a.str()},
                         {"area", num(a.to_double())},
                         {"stationary", num(pi[i])}});
    *areas_csv += csv_join({num(static_cast<int>(i + 1)), num(a.to_double()), num(pi[i])});
  }
  *regions_csv = csv_join({"region", "corner", "x", "y"});
  const auto polys = region_polygons();
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t k = 0; k < 4; ++k)
      *regions_csv += csv_join({num(static_cast<int>(i + 1)), num(static_cast<int>(k)), num(polys[i][k].x),
                                num(polys[i][k].y)});

  const auto adj = markov_adjacency();
  const bool adj_ok = adj.rows() == AdjacencyMatrix::golden().rows();
  Json rows = Json::array(), fractions = Json::array();
  for (State i = 0; i < 3; ++i) {
    Json row = Json::array(), frow = Json::array();
    for (State j = 0; j < 3; ++j) {
      row.push_back(num(adj.rows()[i][j]));
      frow.push_back(transition_fraction(i, j).str());
    }
    rows.push_back(row);
    fractions.push_back(frow);
  }

  const auto pf = pushforward_check(cfg.depth);

  const std::uint64_t points = cfg.samples ? cfg.samples : 1000;
  constexpr int kN = 16;
  std::uint64_t resampled = 0, within = 0;
  double worst = 0;
  for (std::uint64_t i = 0; i < points; ++i) {
    Rng rng(derive_seed(cfg.seed, i));
    for (;;) {
      const TorusPoint p{rng.uniform(), rng.uniform()};
      const auto it = itinerary(p, kN);
      if (!it.reliable) {
        ++resampled;
        continue;
      }
      const auto ph = phi_approx(it.word);
      double dx = std::abs(ph.point.x - p.x), dy = std::abs(ph.point.y - p.y);
      dx = std::min(dx, 1 - dx);
      dy = std::min(dy, 1 - dy);
      const double err = std::hypot(dx, dy);
      within += err <= ph.bound;
      worst = std::max(worst, err / ph.bound);
      break;
    }
  }
  const bool pass = adj_ok && pf.exact() && within == points && total == QSqrt5(1) && max_area_diff <= 1e-9;
  return Json{{"partition", parts},
              {"total_area_exact", total.str()},
              {"max_area_difference", num(max_area_diff)},
              {"adjacency", rows},
              {"adjacency_matches", adj_ok},
              {"transition_fractions", fractions},
              {"pushforward", Json{{"depth", num(pf.depth)},
                                   {"words", num(static_cast<std::uint64_t>(pf.words))},
                                   {"max_residual", pf.max_residual.str()},
                                   {"exact", pf.exact()}}},
              {"round_trip", Json{{"points", num(points)},
                                  {"window", num(kN)},
                                  {"resampled", num(resampled)},
                                  {"within_bound", num(within)},
                                  {"max_error_over_bound", num(worst)}}},
              {"pass", pass}};
}

}  // namespace

ExperimentKind parse_experiment_kind(const std::string& s) {
  if (s == "rn") return ExperimentKind::Rn;
  if (s == "ratio-set") return ExperimentKind::RatioSet;
  if (s == "torus") return ExperimentKind::Torus;
  if (s == "all") return ExperimentKind::All;
  throw InputError("unknown experiment '" + s + "' (rn, ratio-set, torus, all)");
}

CommandResult cmd_construct(const RunConfig& cfg) {
  CommandResult r;
  r.report = new_report("construct", cfg);
  const Construction c = load(cfg);
  const auto rep = validate_params(c.levels, c.profile, c.log_r);
  const nlohmann::json spec = construction_to_json(c);
  auto& s = r.report["sections"];
  s["parameters"] = Json{{"profile", c.profile.mode_name()},
                         {"lambda1", c.profile.lambda1},
                         {"levels", to_ordered(spec.at("levels"))},
                         {"tail", to_ordered(spec.at("tail"))}};
  s["conditions"] = conditions_json(rep);
  s["summary"] = Json{{"levels", num(static_cast<int>(c.levels.size()))}, {"all_pass", rep.all_pass()}};
  r.files["spec.json"] = spec.dump(2) + "\n";
  r.exit_code = rep.all_pass() ? kSuccess : kVerificationFailure;
  return r;
}

CommandResult cmd_verify(const RunConfig& cfg) {
  CommandResult r;
  r.report = new_report("verify", cfg);
  const Construction c = load(cfg);
  auto& s = r.report["sections"];
  std::string csv;
  s["nonsingularity"] = nonsingularity_section(c, &csv);
  s["exactness"] = exactness_section(c);
  s["conservativity"] = conservativity_section(c);
  r.files["hellinger_partial_sums.csv"] = csv;
  bool ok = true;
  for (const char* k : {"nonsingularity", "exactness", "conservativity"}) ok = ok && s[k]["positive"].get<bool>();
  r.exit_code = ok ? kSuccess : kVerificationFailure;
  return r;
}

CommandResult cmd_experiment(const RunConfig& cfg, ExperimentKind kind) {
  CommandResult r;
  r.report = new_report("experiment", cfg);
  const bool all = kind == ExperimentKind::All;
  auto& s = r.report["sections"];
  const bool needs_spec = kind != ExperimentKind::Torus;
  const Construction c = needs_spec ? load(cfg) : Construction{};
  std::string csv, csv2;
  if (all || kind == ExperimentKind::Rn) {
    s["rn-crosscheck"] = rn_section(c, cfg, &csv);
    r.files["rn_trials.csv"] = csv;
  }
  if (all || kind == ExperimentKind::RatioSet) {
    if (all && !c.levels.empty() && c.profile.mode != Mode::Desk) {
      s["ratio-set"] = Json{{"skipped", "requires the desk profile"}};
    } else {
      s["ratio-set"] = ratio_set_section(c, cfg, &csv);
      r.files["ratio_set_hits.csv"] = csv;
    }
  }
  if (all || kind == ExperimentKind::Torus) {
    s["torus"] = torus_section(cfg, &csv, &csv2);
    r.files["torus_areas.csv"] = csv;
    r.files["torus_regions.csv"] = csv2;
  }
  bool ok = true;
  for (const auto& [k, v] : s.items()) ok = ok && !section_failed(v);
  r.exit_code = ok ? kSuccess : kVerificationFailure;
  return r;
}

CommandResult run_command(const std::string& name, const RunConfig& cfg, const std::function<CommandResult()>& body) {
  auto diagnostic = [&](int code, const std::string& kind, const std::string& what) {
    CommandResult r;
    r.exit_code = code;
    r.report = new_report(name, cfg);
    r.report["sections"]["diagnostic"] = Json{{"error", kind}, {"message", what}};
    return r;
  };
  try {
    return body();
  } catch (const CapExceeded& e) {
    return diagnostic(kInputError, "cap-exceeded", e.what());
  } catch (const InputError& e) {
    return diagnostic(kInputError, "input", e.what());
  } catch (const PrecisionError& e) {
    return diagnostic(kVerificationFailure, "precision", e.what());
  } catch (const ConstructionError& e) {
    return diagnostic(kVerificationFailure, "construction", e.what());
  }
}

void emit(const CommandResult& r, const RunConfig& cfg, std::ostream& out) {
  const std::string text = r.report.dump(2) + "\n";
  if (!cfg.out) {
    out << text;
    return;
  }
  std::filesystem::create_directories(*cfg.out);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream f(*cfg.out / name, std::ios::binary);
    if (!f) throw InputError("cannot write " + (*cfg.out / name).string());
    f << content;
  };
  write("report.json", text);
  for (const auto& [name, content] : r.files) write(name, content);
}

}  // namespace goldshift::app
