#include "rank1/io.hpp"

#include <fstream>
#include <regex>

namespace rank1 {

namespace {

BigInt big_from(const Json& v, std::string_view what) {
  if (v.is_string()) return parse_bigint(v.get<std::string>());
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return BigInt(v.get<std::uint64_t>());
    return BigInt(v.get<std::int64_t>());
  }
  throw InvalidArgument(std::string(what) + " must be an integer or a decimal string");
}

std::uint64_t u64_from(const Json& v, std::string_view what) {
  const BigInt b = big_from(v, what);
  if (b < 0 || b > UINT64_MAX) throw InvalidArgument(std::string(what) + " out of range");
  return b.convert_to<std::uint64_t>();
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw InvalidArgument(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

}  // namespace

Json to_json(const ConstructionSchedule& schedule) {
  Json out;
  out["h1"] = to_string(schedule.h1());
  out["stages"] = Json::array();
  for (const StageSpec& st : schedule.stages()) {
    Json s;
    s["r"] = st.r;
    s["spacers"] = Json::array();
    for (const BigInt& x : st.spacers) s["spacers"].push_back(to_string(x));
    out["stages"].push_back(std::move(s));
  }
  out["meta"] = {{"family", schedule.meta().family}, {"params", schedule.meta().params}};
  out["heights"] = Json::array();
  for (const BigInt& h : schedule.heights()) out["heights"].push_back(to_string(h));
  return out;
}

ConstructionSchedule schedule_from_json(const Json& j) {
  const BigInt h1 = big_from(field(j, "h1"), "h1");
  std::vector<StageSpec> stages;
  const Json& js = field(j, "stages");
  if (!js.is_array()) throw InvalidArgument("\"stages\" must be an array");
  for (const Json& s : js) {
    StageSpec st;
    st.r = u64_from(field(s, "r"), "r");
    const Json& sp = field(s, "spacers");
    if (!sp.is_array()) throw InvalidArgument("\"spacers\" must be an array");
    for (const Json& x : sp) st.spacers.push_back(big_from(x, "spacer"));
    stages.push_back(std::move(st));
  }

  ScheduleMeta meta;
  std::vector<std::optional<AlgebraicStageParams>> algebraic;
  if (j.contains("meta")) {
    const Json& m = j.at("meta");
    if (m.contains("family")) meta.family = m.at("family").get<std::string>();
    if (m.contains("params")) meta.params = m.at("params");
    const Json& p = meta.params;
    if (meta.family == "algebraic" && p.contains("q") && p.contains("H") && p.contains("s_last")) {
      if (p["q"].size() != stages.size() || p["H"].size() != stages.size() ||
          p["s_last"].size() != stages.size())
        throw InvalidArgument("algebraic params must list q, H and s_last for every stage");
      for (std::size_t k = 0; k < stages.size(); ++k) {
        AlgebraicStageParams a;
        a.r = stages[k].r;
        a.q = u64_from(p["q"][k], "q");
        a.H = big_from(p["H"][k], "H");
        a.s_last = big_from(p["s_last"][k], "s_last");
        algebraic.emplace_back(std::move(a));
      }
    }
  }

  ConstructionSchedule out(h1, std::move(stages), std::move(meta), std::move(algebraic));
  if (j.contains("heights")) {
    const Json& hs = j.at("heights");
    bool same = hs.is_array() && hs.size() == out.tower_count();
    for (std::size_t k = 0; same && k < hs.size(); ++k)
      same = big_from(hs[k], "height") == out.heights()[k];
    if (!same) throw InvalidArgument("recorded heights disagree with the height recursion");
  }
  return out;
}

ConstructionSchedule read_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open schedule file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("schedule file " + path + ": " + e.what());
  }
  return schedule_from_json(j);
}

Json to_json(const LevelSet& set) {
  Json out;
  out["stage"] = set.stage;
  out["levels"] = Json::array();
  for (const BigInt& x : set.levels) out["levels"].push_back(to_string(x));
  return out;
}

LevelSet level_set_from_json(const ConstructionSchedule& schedule, const Json& j) {
  const std::uint64_t stage = u64_from(field(j, "stage"), "stage");
  std::vector<BigInt> levels;
  for (const Json& x : field(j, "levels")) levels.push_back(big_from(x, "level"));
  return LevelSet::make(schedule, stage, std::move(levels));
}

Json to_json(const VerificationReport& report) {
  Json out;
  out["property"] = report.property;
  out["stage_from"] = report.stage_from;
  out["stage_to"] = report.stage_to;
  out["verdict"] = std::string(to_string(report.verdict));
  out["witnesses"] = Json::array();
  for (const Witness& w : report.witnesses) {
    Json jw = Json::object();
    for (const auto& [k, v] : w.fields) jw[k] = v;
    out["witnesses"].push_back(std::move(jw));
  }
  out["stats"] = Json::object();
  for (const auto& [k, v] : report.stats) out["stats"][k] = v;
  return out;
}

Json to_json(const CorrelationResult& r) {
  return {{"m", to_string(r.m)},
          {"lower", to_string(r.lower)},
          {"upper", to_string(r.upper)},
          {"stage_used", r.stage_used}};
}

Json to_json(const JoiningCoefficients& co) {
  Json out;
  out["j"] = co.j;
  out["l"] = to_string(co.l);
  out["stage_used"] = co.stage_used;
  out["exact"] = co.exact;
  out["mass_lower"] = to_string(co.mass_lower);
  out["mass_upper"] = to_string(co.mass_upper);
  out["a"] = Json::array();
  for (const auto& [k, e] : co.a)
    out["a"].push_back({{"k", to_string(k)}, {"lower", to_string(e.lower)}, {"upper", to_string(e.upper)}});
  return out;
}

Json to_json(const AveragingEstimate& est) {
  Json out;
  out["j"] = est.j;
  out["n"] = est.n;
  out["window"] = est.window;
  out["value"] = to_string(est.value);
  out["value_lower"] = to_string(est.value_lower);
  out["bound"] = to_string(est.bound);
  out["exact"] = est.exact;
  return out;
}

LevelSet parse_level_set(const ConstructionSchedule& schedule, std::string_view text) {
  const std::string s(text);
  if (!s.empty() && s.front() == '@') {
    std::ifstream in(s.substr(1));
    if (!in) throw InvalidArgument("cannot open level set file " + s.substr(1));
    return level_set_from_json(schedule, Json::parse(in));
  }
  static const std::regex named(R"(\s*(?:T\^(\d+)\s*)?([EU])_?(\d+)\s*)");
  static const std::regex listed(R"(\s*(\d+)\s*:\s*(\d+(?:\s*,\s*\d+)*)?\s*)");
  std::smatch mt;
  if (std::regex_match(s, mt, named)) {
    const std::size_t j = std::stoul(mt[3]);
    if (mt[2] == "U") {
      if (mt[1].matched) throw InvalidArgument("preset T^iU_j is not a union of levels");
      return full_tower(schedule, j);
    }
    return tower_level(schedule, j, mt[1].matched ? parse_bigint(mt[1].str()) : BigInt(0));
  }
  if (std::regex_match(s, mt, listed)) {
    std::vector<BigInt> levels;
    const std::string body = mt[2];
    static const std::regex number(R"(\d+)");
    for (auto it = std::sregex_iterator(body.begin(), body.end(), number); it != std::sregex_iterator(); ++it)
      levels.push_back(parse_bigint(it->str()));
    return LevelSet::make(schedule, std::stoul(mt[1]), std::move(levels));
  }
  throw InvalidArgument("unrecognized level set \"" + s +
                        "\" (expected E_j, U_j, T^iE_j, j:i1,i2,... or @file)");
}

std::string csv_header(bool with_bound) {
  return with_bound ? "m,lower,upper,stage_used,bound" : "m,lower,upper,stage_used";
}

std::string csv_row(const CorrelationResult& r) {
  return to_string(r.m) + "," + to_string(r.lower) + "," + to_string(r.upper) + "," +
         std::to_string(r.stage_used);
}

std::string csv_row(const CorrelationResult& r, const std::string& bound) {
  return csv_row(r) + "," + bound;
}

}  // namespace rank1
