#include "schedule_source.hpp"

#include <regex>

#include "rank1/io.hpp"

namespace rank1::cli {

void ScheduleSource::add_options(CLI::App& app) {
  auto* file = app.add_option("--schedule", path, "Schedule JSON file");
  auto* fam = app.add_option("--family", family, "Inline family: explicit, algebraic, sidon, decay")
                  ->check(CLI::IsMember({"explicit", "algebraic", "sidon", "decay"}));
  file->excludes(fam);
  app.add_option("--h1", h1, "Height index of tower 1 (tower 1 has h1+1 levels)");
  app.add_option("--stage", stages, "Explicit stage \"r:s1,s2,...\" (repeatable)");
  app.add_option("--primes", primes, "Algebraic cutting numbers")->delimiter(',');
  app.add_option("--H", H_rule, "Algebraic bulk spacer rule: N, r, r+N, h, h+N");
  app.add_option("--s-last", s_last_rule, "Algebraic last spacer rule (same syntax as --H)");
  app.add_option("--cuts", cuts, "Sidon cutting numbers")->delimiter(',');
  app.add_option("--growth", growth, "Sidon growth factor");
  app.add_option("--psi", psi, "Decay slow function: lnln, ln, sqrt");
  app.add_option("--stages", stage_count, "Decay family: number of stages");
  app.add_option("--C", C, "Decay family: constant hint (P/Q)");
  app.add_option("--spacing", spacing, "Decay family spacers: growth or sidon_set");
  app.add_option("--r-cap", r_cap, "Decay family: largest cutting number tried");
}

ConstructionSchedule ScheduleSource::load() const {
  if (!path.empty()) return read_schedule(path);
  const BigInt first = parse_bigint(h1);
  if (family.empty()) throw InvalidArgument("a schedule is required: --schedule PATH or --family NAME");
  if (family == "explicit") {
    static const std::regex form(R"(\s*(\d+)\s*:\s*(\d+(?:\s*,\s*\d+)*)\s*)");
    std::vector<StageSpec> specs;
    for (const std::string& text : stages) {
      std::smatch mt;
      if (!std::regex_match(text, mt, form))
        throw InvalidArgument("stage \"" + text + "\" is not of the form r:s1,s2,...");
      StageSpec st;
      st.r = std::stoull(mt[1]);
      const std::string body = mt[2];
      static const std::regex number(R"(\d+)");
      for (auto it = std::sregex_iterator(body.begin(), body.end(), number);
           it != std::sregex_iterator(); ++it)
        st.spacers.push_back(parse_bigint(it->str()));
      specs.push_back(std::move(st));
    }
    return ConstructionSchedule(first, std::move(specs));
  }
  if (family == "algebraic") {
    if (primes.empty()) throw InvalidArgument("algebraic family needs --primes");
    return algebraic_schedule(first, primes, StageRule::parse(H_rule), StageRule::parse(s_last_rule));
  }
  if (family == "sidon") {
    if (cuts.empty()) throw InvalidArgument("sidon family needs --cuts");
    if (growth < 2) throw InvalidArgument("growth factor must be >= 2");
    return sidon_growth_schedule(first, cuts, growth);
  }
  DecayOptions options;
  options.spacing = parse_decay_spacing(spacing);
  options.growth_factor = growth;
  options.r_cap = r_cap;
  return decay_rate_schedule(first, parse_slow_function(psi), parse_rational(C), stage_count,
                             options);
}

}  // namespace rank1::cli
