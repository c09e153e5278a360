#include "goldshift/io.hpp"

#include "goldshift/errors.hpp"

#include <cmath>
#include <fstream>

namespace goldshift {

namespace bmp = boost::multiprecision;
using nlohmann::json;

namespace {

std::string str_field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("spec: missing field '") + key + "'");
  const auto& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return to_decimal(v.get<double>());
  throw InputError(std::string("spec: field '") + key + "' must be a decimal string");
}

BigInt big_field(const json& j, const char* key) { return parse_bigint(str_field(j, key)); }

Real real_field(const json& j, const char* key) {
  const std::string s = str_field(j, key);
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw InputError(std::string("spec: field '") + key + "' is not a number: " + s);
  }
}

double double_field(const json& j, const char* key) {
  const std::string s = str_field(j, key);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw InputError("");
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("spec: field '") + key + "' is not a number: " + s);
  }
}

// Rounds to the precision the reader parses at (`bits`) and prints enough
// digits to recover that binary value exactly.
std::string real_str(const Real& v, unsigned bits) {
  PrecisionGuard guard(bits);
  const Real r(v, Real::default_precision());
  const auto prec = static_cast<double>(mpfr_get_prec(r.backend().data()));
  const auto digits = static_cast<std::streamsize>(std::ceil(prec * 0.30102999566398120)) + 1;
  return r.str(digits, std::ios_base::scientific);
}

}  // namespace

json tail_rule_to_json(const TailRule& t) {
  json j{{"kind", t.label()}};
  if (t.kind == TailRule::Kind::Construction) j["log_m_bound"] = to_decimal(t.log_m_bound);
  if (t.kind == TailRule::Kind::ConstantLambda) j["lambda"] = to_decimal(t.lambda);
  return j;
}

TailRule tail_rule_from_json(const json& j) {
  TailRule t;
  const std::string kind = str_field(j, "kind");
  if (kind == "stationary") {
    t.kind = TailRule::Kind::Stationary;
  } else if (kind == "construction") {
    t.kind = TailRule::Kind::Construction;
    t.log_m_bound = double_field(j, "log_m_bound");
  } else if (kind == "constant-lambda") {
    t.kind = TailRule::Kind::ConstantLambda;
    t.lambda = double_field(j, "lambda");
    if (!(t.lambda >= 1)) throw InputError("spec: constant-lambda tail needs lambda >= 1");
  } else {
    throw InputError("spec: unknown tail kind '" + kind + "'");
  }
  return t;
}

json construction_to_json(const Construction& c) {
  PrecisionGuard guard(c.profile.precision_bits);
  json prof{{"mode", c.profile.mode_name()},
            {"lambda1", c.profile.lambda1},
            {"precision_bits", std::to_string(c.profile.precision_bits)}};
  if (c.profile.mixing_tol) prof["mixing_tol"] = to_decimal(*c.profile.mixing_tol);
  if (c.profile.failure_base) prof["failure_base"] = to_decimal(*c.profile.failure_base);
  if (c.profile.horizon_cap) prof["horizon_cap"] = to_decimal(*c.profile.horizon_cap);
  if (c.profile.confidence) prof["confidence"] = to_decimal(*c.profile.confidence);

  json levels = json::array();
  for (const auto& L : c.levels) {
    json p = json::object();
    for (const auto& [k, v] : L.p) p[std::to_string(k)] = v.str();
    json lv{{"level", std::to_string(L.l)},
            {"lambda", real_str(L.lambda, c.profile.precision_bits)},
            {"K", L.K.str()},
            {"M_prev", (L.N - L.n).str()},
            {"n", L.n.str()},
            {"N", L.N.str()},
            {"k_mix", L.k_mix.str()},
            {"m", L.m ? json(L.m->str()) : json(nullptr)},
            {"M", L.M ? json(L.M->str()) : json(nullptr)},
            {"log_m", real_str(L.log_m, std::max(L.working_bits, c.profile.precision_bits))},
            {"p", p},
            {"dp_symbolic", L.dp_symbolic},
            {"freq_mass", to_decimal(L.freq_mass)},
            {"pair_mass", to_decimal(L.pair_mass)},
            {"working_bits", std::to_string(L.working_bits)}};
    levels.push_back(std::move(lv));
  }
  return json{{"format", "goldshift-spec"},
              {"version", std::to_string(kSpecFormatVersion)},
              {"profile", prof},
              {"levels", levels},
              {"tail", tail_rule_to_json(c.spec.tail_rule())}};
}

Construction construction_from_json(const json& j) {
  if (!j.is_object()) throw InputError("spec: top level must be an object");
  if (j.value("format", std::string()) != "goldshift-spec") throw InputError("spec: not a goldshift-spec document");
  if (str_field(j, "version") != std::to_string(kSpecFormatVersion))
    throw InputError("spec: unsupported version " + str_field(j, "version"));

  Construction c;
  const json prof = j.value("profile", json::object());
  c.profile = prof.contains("mode") && str_field(prof, "mode") == "desk" ? Profile::desk() : Profile::full();
  if (prof.contains("lambda1")) c.profile.lambda1 = str_field(prof, "lambda1");
  if (prof.contains("precision_bits")) c.profile.precision_bits = static_cast<unsigned>(std::stoul(str_field(prof, "precision_bits")));
  if (c.profile.precision_bits < 64) throw InputError("spec: precision_bits must be >= 64");
  if (prof.contains("mixing_tol")) c.profile.mixing_tol = double_field(prof, "mixing_tol");
  if (prof.contains("failure_base")) c.profile.failure_base = double_field(prof, "failure_base");
  if (prof.contains("horizon_cap")) c.profile.horizon_cap = double_field(prof, "horizon_cap");
  if (prof.contains("confidence")) c.profile.confidence = double_field(prof, "confidence");

  PrecisionGuard guard(c.profile.precision_bits);
  const Real lam1(c.profile.lambda1);
  if (!(lam1 > 1)) throw InputError("spec: lambda1 must be > 1");
  c.log_r = bmp::log(distortion_value(lam1));

  const json levels = j.value("levels", json::array());
  if (!levels.is_array()) throw InputError("spec: levels must be an array");
  int l = 0;
  for (const auto& lv : levels) {
    ++l;
    LevelParams L;
    L.l = l;
    if (lv.contains("level") && str_field(lv, "level") != std::to_string(l))
      throw InputError("spec: levels must be numbered 1, 2, ... in order");
    L.working_bits = lv.contains("working_bits") ? static_cast<unsigned>(std::stoul(str_field(lv, "working_bits")))
                                                 : c.profile.precision_bits;
    // lambda is chosen at profile precision; log m at the level's working precision.
    L.lambda = real_field(lv, "lambda");
    if (!(L.lambda >= 1)) throw InputError("spec: lambda must be >= 1 at level " + std::to_string(l));
    L.lambda_d = L.lambda.convert_to<double>();
    L.N = big_field(lv, "N");
    L.n = lv.contains("n") ? big_field(lv, "n") : L.N - big_field(lv, "M_prev");
    if (lv.contains("M_prev") && L.N - L.n != big_field(lv, "M_prev"))
      throw InputError("spec: n and M_prev disagree at level " + std::to_string(l));
    if (L.n < 1) throw InputError("spec: empty block at level " + std::to_string(l));
    if (lv.contains("M") && !lv.at("M").is_null()) L.M = big_field(lv, "M");
    if (lv.contains("m") && !lv.at("m").is_null()) L.m = big_field(lv, "m");
    if (L.M && !L.m) L.m = *L.M - L.N;
    if (L.M && *L.m != *L.M - L.N) throw InputError("spec: m and M disagree at level " + std::to_string(l));
    PrecisionGuard level_guard(std::max(L.working_bits, c.profile.precision_bits));
    if (lv.contains("log_m")) L.log_m = real_field(lv, "log_m");
    else if (L.m && *L.m > 0) L.log_m = bmp::log(Real(*L.m));
    else if (!L.m) throw InputError("spec: level " + std::to_string(l) + " needs M or log_m");
    L.K = lv.contains("K") ? big_field(lv, "K") : BigInt(1);
    L.k_mix = lv.contains("k_mix") ? big_field(lv, "k_mix") : L.N + 1;
    if (lv.contains("p"))
      for (const auto& [k, v] : lv.at("p").items()) L.p[std::stoi(k)] = parse_bigint(v.get<std::string>());
    L.dp_symbolic = lv.value("dp_symbolic", false);
    if (lv.contains("freq_mass")) L.freq_mass = double_field(lv, "freq_mass");
    if (lv.contains("pair_mass")) L.pair_mass = double_field(lv, "pair_mass");
    c.levels.push_back(std::move(L));
  }

  MeasureSpec base = spec_from_params(c.levels, c.profile);  // validates the block chain
  c.spec = j.contains("tail") ? MeasureSpec(base.schedule(), tail_rule_from_json(j.at("tail"))) : base;
  return c;
}

Construction read_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read spec file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("spec file " + path.string() + " is not valid JSON: " + e.what());
  }
  return construction_from_json(j);
}

void write_spec_file(const std::filesystem::path& path, const Construction& c) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write spec file " + path.string());
  out << construction_to_json(c).dump(2) << '\n';
}

}  // namespace goldshift
