#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <memory>

#include "rank1/io.hpp"
#include "rank1/verify.hpp"

namespace rank1::cli {

namespace {

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidArgument("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

Limits limits_for(const RunConfig& config) {
  Limits limits = Limits::from_environment();
  if (config.cap > 0) limits.position_cap = config.cap;
  return limits;
}

Rational tolerance_for(const RunConfig& config) {
  const Rational t = parse_rational(config.tolerance);
  if (t < 0) throw InvalidArgument("tolerance must be non-negative");
  return t;
}

void write_json(const RunConfig& config, const Json& j) {
  Output out(config.out);
  out.stream() << j.dump(2) << "\n";
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Pass: return kPass;
    case Verdict::Fail: return kFail;
    case Verdict::Indeterminate: return kIndeterminate;
  }
  return kFail;
}

SlowFunction schedule_psi(const RunConfig& config, const ConstructionSchedule& s) {
  const auto& p = s.meta().params;
  if (s.meta().family == "decay" && p.contains("psi"))
    return parse_slow_function(p["psi"].get<std::string>());
  return parse_slow_function(config.source.psi);
}

}  // namespace

int run_build(const RunConfig& config) {
  const ConstructionSchedule s = config.source.load();
  write_json(config, to_json(s));
  std::cerr << "heights:";
  for (const BigInt& h : s.heights()) std::cerr << " " << to_string(h);
  std::cerr << "\n";
  return kPass;
}

int run_verify(const RunConfig& config) {
  std::vector<std::string> props;
  for (const std::string& p : config.props)
    if (!p.empty()) props.push_back(p);
  if (props.empty()) throw CLI::ValidationError("--props", "property list is empty");
  const ConstructionSchedule s = config.source.load();
  const Limits limits = limits_for(config);
  const std::size_t last_stage =
      config.j_max > 0 ? std::min(config.j_max, s.stage_count()) : s.stage_count();
  Rng rng(config.seed);
  std::vector<VerificationReport> reports;
  Json decay;

  for (const std::string& prop : props) {
    if (prop == "ornstein" || prop == "injectivity") {
      bool any = false;
      for (std::size_t j = 1; j <= last_stage; ++j) {
        if (!s.algebraic(j)) continue;
        any = true;
        reports.push_back(prop == "ornstein" ? verify_ornstein(s, j) : verify_injectivity(s, j));
      }
      if (!any) throw InvalidArgument(prop + " needs stages with algebraic parameters");
    } else if (prop == "sidon") {
      for (std::size_t j = 1; j <= last_stage; ++j)
        reports.push_back(verify_sidon(s, j, config.budget));
    } else if (prop == "decay") {
      const SlowFunction psi = schedule_psi(config, s);
      const LevelSet A = parse_level_set(s, config.set_a);
      const auto shifts = decay_sample_shifts(s, A.stage, config.samples, rng);
      if (shifts.empty()) throw InvalidArgument("decay needs at least two towers above the set's tower");
      Rational C;
      if (!config.decay_C.empty()) {
        C = parse_rational(config.decay_C);
      } else if (config.decay_fit == "first-stage") {
        std::vector<BigInt> first;
        for (const BigInt& m : shifts)
          if (m <= s.height(A.stage + 1)) first.push_back(m);
        C = fit_decay_constant(s, A, psi, first, limits);
        if (C == 0) C = 1;
      } else {
        C = chain_decay_constant(s, A);
      }
      decay = {{"psi", std::string(to_string(psi))},
               {"C", to_string(C)},
               {"C_source", config.decay_C.empty() ? config.decay_fit : std::string("given")}};
      reports.push_back(verify_decay(s, A, psi, C, shifts, limits));
    } else if (prop == "joining") {
      for (std::size_t j = 1; j <= last_stage; ++j) {
        const BigInt room = s.height(s.tower_count()) - s.height(j);
        for (const std::string& text : config.l) {
          const BigInt l = parse_bigint(text);
          if ((l < 0 ? BigInt(-l) : l) > room) continue;
          reports.push_back(verify_joining_mass(s, j, l, limits));
        }
      }
    } else if (prop == "lemma") {
      for (std::size_t j = 1; j <= last_stage; ++j)
        reports.push_back(verify_lemma_trials(s, j, config.trials, rng, limits));
    } else {
      throw CLI::ValidationError("--props", "unknown property " + prop);
    }
  }

  const Verdict verdict = combine(reports);
  Json out;
  out["verdict"] = std::string(to_string(verdict));
  if (!decay.is_null()) out["decay"] = decay;
  out["reports"] = Json::array();
  for (const auto& r : reports) out["reports"].push_back(to_json(r));
  write_json(config, out);
  return exit_for(verdict);
}

int run_correlate(const RunConfig& config) {
  const ConstructionSchedule s = config.source.load();
  const LevelSet A = parse_level_set(s, config.set_a);
  const LevelSet B = parse_level_set(s, config.set_b.empty() ? config.set_a : config.set_b);
  CorrelationEngine engine(s, A, B, limits_for(config));
  const BigInt m = parse_bigint(config.m);
  try {
    write_json(config, to_json(engine.at(m, tolerance_for(config))));
    return kPass;
  } catch (const ToleranceUnreachable& e) {
    Json j = to_json(e.best());
    j["tolerance_met"] = false;
    write_json(config, j);
    std::cerr << "rank1: " << e.what() << "\n";
    return kIndeterminate;
  }
}

int run_sweep(const RunConfig& config) {
  const ConstructionSchedule s = config.source.load();
  const LevelSet A = parse_level_set(s, config.set_a);
  const LevelSet B = parse_level_set(s, config.set_b.empty() ? config.set_a : config.set_b);
  const BigInt from = parse_bigint(config.m_from), to = parse_bigint(config.m_to);
  const BigInt stride = parse_bigint(config.stride);
  if (from > to) throw InvalidArgument("--m-from must not exceed --m-to");
  if (stride <= 0) throw InvalidArgument("--stride must be positive");
  const Rational tol = tolerance_for(config);
  const bool with_bound = config.bound != "none";
  SlowFunction psi = SlowFunction::LnLn;
  Rational C = 1;
  if (config.bound == "decay") {
    psi = schedule_psi(config, s);
    if (!config.decay_C.empty()) C = parse_rational(config.decay_C);
    if (C <= 0) throw InvalidArgument("--decay-C must be positive");
  }

  CorrelationEngine engine(s, A, B, limits_for(config));
  Output out(config.out);
  std::ostream& os = out.stream();
  if (config.format == "csv") os << csv_header(with_bound) << "\n";
  Json rows = Json::array();
  int code = kPass;

  auto bound_for = [&](const BigInt& m) -> std::string {
    const BigInt am = m < 0 ? BigInt(-m) : m;
    if (config.bound == "sidon") {
      // mu(A)/r_j for h_j < |m| <= h_{j+1}, j at or above the sets' tower
      for (std::size_t j = A.stage; j < s.tower_count(); ++j)
        if (am > s.height(j) && am <= s.height(j + 1))
          return to_string(Rational(measure(s, A) / s.cuts(j)));
      return "";
    }
    if (am < 3) return "";
    return to_string(decay_rate_lower(C, psi, am));
  };

  try {
    for (BigInt m = from; m <= to; m += stride) {
      CorrelationResult r;
      try {
        r = engine.at(m, tol);
      } catch (const ToleranceUnreachable& e) {
        r = e.best();
        code = kIndeterminate;
      }
      if (config.format == "csv") {
        os << (with_bound ? csv_row(r, bound_for(m)) : csv_row(r)) << "\n" << std::flush;
      } else {
        Json j = to_json(r);
        if (with_bound) j["bound"] = bound_for(m);
        rows.push_back(std::move(j));
      }
    }
  } catch (const CapExceeded& e) {
    if (config.format != "csv") os << rows.dump(2) << "\n";
    os.flush();
    std::cerr << "rank1: " << e.what() << " (partial output kept)\n";
    return kFail;
  }
  if (config.format != "csv") os << rows.dump(2) << "\n";
  return code;
}

int run_coeffs(const RunConfig& config) {
  const ConstructionSchedule s = config.source.load();
  const Limits limits = limits_for(config);
  Json out = Json::array();
  bool exact = true;
  for (const std::string& text : config.l) {
    const JoiningCoefficients co = joining_coefficients(s, config.j, parse_bigint(text), limits);
    exact = exact && co.exact;
    out.push_back(to_json(co));
  }
  write_json(config, config.l.size() == 1 ? out.front() : out);
  return exact ? kPass : kIndeterminate;
}

}  // namespace rank1::cli
