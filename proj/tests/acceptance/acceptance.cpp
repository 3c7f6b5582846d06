// Acceptance runner: one PASS/FAIL line per criterion.
//   rank1_acceptance                 all criteria
//   rank1_acceptance --criterion N   criterion N only

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "../unit/random_schedules.hpp"
#include "interval_oracle.hpp"
#include "rank1/correl.hpp"
#include "rank1/number_theory.hpp"
#include "rank1/schedule.hpp"
#include "rank1/slow_function.hpp"
#include "rank1/tower.hpp"
#include "rank1/verify.hpp"

using namespace rank1;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

const std::vector<std::uint64_t> kSidonCuts{3, 4, 5, 6};
const std::vector<std::uint64_t> kAlgebraicPrimes{5, 11, 23, 47};

ConstructionSchedule sidon_family() { return sidon_growth_schedule(BigInt(1), kSidonCuts, 2); }

ConstructionSchedule algebraic_family() { return algebraic_schedule(BigInt(4), kAlgebraicPrimes); }

std::vector<std::uint64_t> primes_5_to_101() {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 5; p <= 101; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

std::string first_witness(const VerificationReport& rep) {
  if (rep.witnesses.empty()) return "none";
  std::string s;
  for (const auto& [k, v] : rep.witnesses.front().fields) s += (s.empty() ? "" : " ") + k + "=" + v;
  return s;
}

void ornstein(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  std::uint64_t checks = 0, violations = 0;
  const auto primes = primes_5_to_101();
  for (std::uint64_t p : primes) {
    const auto s = algebraic_schedule(BigInt(1), std::vector<std::uint64_t>{p});
    const auto meta_q = s.algebraic(1)->q;
    o.require(meta_q == find_primitive_root(p), "q is not the smallest primitive root of " + std::to_string(p));
    const auto rep = verify_ornstein(s, 1);
    checks += rep.stat("checks");
    violations += rep.stat("violations");
    o.require(rep.passed(), "r=" + std::to_string(p) + ": " + first_witness(rep));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.detail << primes.size() << " primes, " << checks << " checks, " << violations << " violations, "
           << secs << " s";
  o.require(secs < 5.0, "runtime over 5 s");
}

void injectivity(Outcome& o) {
  std::uint64_t checks = 0;
  for (std::uint64_t p : primes_5_to_101()) {
    const auto s = algebraic_schedule(BigInt(1), std::vector<std::uint64_t>{p});
    const auto rep = verify_injectivity(s, 1);
    checks += rep.stat("checks");
    o.require(rep.passed(), "r=" + std::to_string(p) + ": " + first_witness(rep));
  }
  // r = 5, q = 2, H = 5 gives spacers (3,6,7,4,0); bump s(2)
  StageSpec mutated;
  mutated.r = 5;
  for (long long x : {3, 7, 7, 4, 0}) mutated.spacers.emplace_back(x);
  const auto control = verify_injectivity(mutated, BigInt(5), 1);
  o.detail << checks << " checks; mutated control: " << to_string(control.verdict) << " ("
           << first_witness(control) << ")";
  o.require(control.verdict == Verdict::Fail && !control.witnesses.empty(),
            "mutated spacers not detected");
}

void sidon_single_column(Outcome& o) {
  const auto s = sidon_family();
  constexpr std::uint64_t kLimit = 1'000'000;
  std::size_t stages = 0;
  for (std::size_t j = 1; j < s.tower_count(); ++j) {
    if (s.height(j + 1) > kLimit) continue;
    const auto rep = verify_sidon(s, j, kLimit);
    ++stages;
    o.detail << "j=" << j << ":" << rep.stat("checks") << " ";
    o.require(rep.stat("exhaustive") > 0, "stage " + std::to_string(j) + " not exhaustive");
    o.require(rep.passed(), "stage " + std::to_string(j) + ": " + first_witness(rep));
  }
  o.require(stages > 0, "no stage with h_{j+1} <= 10^6");
  const ConstructionSchedule equal(BigInt(1), {StageSpec{4, {BigInt(2), BigInt(2), BigInt(2), BigInt(0)}},
                                               StageSpec{3, {BigInt(1), BigInt(1), BigInt(0)}}});
  const auto control = verify_sidon(equal, 1, kLimit);
  o.detail << "; equal-spacer control: " << to_string(control.verdict) << " (" << first_witness(control)
           << ")";
  o.require(control.verdict == Verdict::Fail && !control.witnesses.empty(),
            "equal spacers not detected");
}

void sidon_bound(Outcome& o) {
  const auto s = sidon_family();
  const std::size_t j0 = 1;
  // Correlations need the two towers above m; stages j with h_{j+1} <= h_{J_max - 1}
  const std::size_t j_last = s.tower_count() - 2;
  std::uint64_t queries = 0, unresolved = 0;
  const std::vector<LevelSet> presets{base_level(s, j0), tower_level(s, j0, BigInt(1)), full_tower(s, j0)};
  for (const LevelSet& A : presets) {
    CorrelationEngine engine(s, A, A);
    const Rational mu = measure(s, A);
    for (std::size_t j = j0 + 1; j <= j_last; ++j) {
      const Rational bound = mu / s.cuts(j);
      for (BigInt m = s.height(j) + 1; m <= s.height(j + 1); ++m) {
        const auto r = engine.bracket(m);
        ++queries;
        if (!r.exact()) ++unresolved;
        if (r.upper > bound) {
          o.require(false, "m=" + to_string(m) + " upper=" + to_string(r.upper) + " bound=" +
                               to_string(bound));
          return;
        }
      }
    }
  }
  o.detail << queries << " correlations for j in [" << j0 + 1 << ", " << j_last << "], " << unresolved
           << " not exact";
}

void decay_certificate(Outcome& o) {
  // The threshold psi(h_{j+1}) >= sqrt(h_j) must hold with psi = ln ln for three stages.
  std::size_t best = 0;
  for (DecaySpacing spacing : {DecaySpacing::Growth, DecaySpacing::SidonSet}) {
    DecayOptions options;
    options.spacing = spacing;
    options.r_cap = 1u << 14;
    try {
      const auto s = decay_rate_schedule(BigInt(2), SlowFunction::LnLn, Rational(1), 3, options);
      const LevelSet A = base_level(s, 1);
      Rng rng(5);
      const auto shifts = decay_sample_shifts(s, 1, 100, rng);
      std::vector<BigInt> first;
      for (const BigInt& m : shifts)
        if (m <= s.height(2)) first.push_back(m);
      const Rational C = fit_decay_constant(s, A, SlowFunction::LnLn, first);
      const auto rep = verify_decay(s, A, SlowFunction::LnLn, C, shifts);
      o.detail << to_string(spacing) << ": C=" << to_string(C) << " verdict " << to_string(rep.verdict)
               << "; ";
      o.require(rep.passed(), std::string(to_string(spacing)) + ": " + first_witness(rep));
      return;
    } catch (const ThresholdUnreachable& e) {
      best = std::max(best, e.stage() - 1);
      o.detail << to_string(spacing) << ": stage " << e.stage() << " needs psi(h_next) >= "
               << e.required().lo << " but r <= " << e.cap() << " reaches " << e.attained().hi << "; ";
    }
  }
  o.require(false, "no ln ln schedule with 3 stages exists; best " + std::to_string(best));
}

void averaging_decay(Outcome& o) {
  // Brackets may be open at the top of the last tower, so every comparison
  // uses the side that certifies it.
  const auto s = algebraic_family();
  const LevelSet A = base_level(s, 1);
  std::optional<Rational> previous_lower;
  for (std::size_t j = 1; j <= s.stage_count(); ++j) {
    const std::uint64_t n = s.cuts(j) / 2;
    const auto est = averaging_norm(s, j, n, A);
    o.detail << "j=" << j << ": [" << to_string(est.value_lower) << ", " << to_string(est.value)
             << "] <= " << to_string(est.bound) << "; ";
    o.require(est.value <= est.bound, "stage " + std::to_string(j) + " above majorant");
    if (previous_lower)
      o.require(est.value < *previous_lower, "stage " + std::to_string(j) + " not decreasing");
    previous_lower = est.value_lower;
  }
}

void joining_mass(Outcome& o) {
  std::uint64_t tested = 0;
  for (const auto& s : {sidon_family(), algebraic_family()}) {
    const BigInt h1 = s.height(1), h2 = s.height(2);
    const std::vector<BigInt> ls{BigInt(0), BigInt(1), BigInt(-1), h1, BigInt(-h1), BigInt(h2 + 1),
                                 BigInt(-h2 - 1)};
    for (std::size_t j = 1; j <= std::min<std::size_t>(4, s.stage_count()); ++j) {
      for (const BigInt& l : ls) {
        const auto rep = verify_joining_mass(s, j, l);
        ++tested;
        o.require(rep.passed(), s.meta().family + " j=" + std::to_string(j) + " l=" + to_string(l) +
                                    " " + std::string(to_string(rep.verdict)) + " " + first_witness(rep));
      }
    }
  }
  o.detail << tested << " (schedule, j, l) cases";
}

void lemma_identity(Outcome& o) {
  Rng rng(8);
  const auto padded = algebraic_schedule(BigInt(4), kAlgebraicPrimes, StageRule::parse("r"),
                                         StageRule::parse("h"));
  for (const auto& s : {sidon_family(), algebraic_family(), padded}) {
    std::uint64_t exact = 0, open = 0;
    for (std::size_t j = 1; j <= 3; ++j) {
      const auto rep = verify_lemma_trials(s, j, 100, rng);
      exact += rep.stat("exact");
      open += rep.stat("indeterminate");
      o.require(rep.verdict != Verdict::Fail,
                s.meta().family + " j=" + std::to_string(j) + ": " + first_witness(rep));
    }
    o.detail << s.meta().family << " s_last=" << s.meta().params.value("s_last_rule", "-") << ": " << exact << " exact, " << open << " unresolved; ";
    o.require(exact > 0, s.meta().family + ": no trial resolved");
  }
}

void oracle_equivalence(Outcome& o) {
  Rng rng(9);
  std::uint64_t queries = 0, schedules = 0;
  while (queries < 600) {
    const auto s = testing_helpers::random_schedule(rng, 100'000);
    const oracle::IntervalModel model(s);
    ++schedules;
    const std::size_t j = 1 + rng.below(std::uint64_t{s.tower_count() - 1});
    const LevelSet A = testing_helpers::random_levels(rng, s, j);
    const LevelSet B = testing_helpers::random_levels(rng, s, j);
    std::vector<std::size_t> ai, bi;
    for (const BigInt& x : A.levels) ai.push_back(x.convert_to<std::size_t>());
    for (const BigInt& x : B.levels) bi.push_back(x.convert_to<std::size_t>());
    CorrelationEngine engine(s, A, B);
    const long long span = engine.max_shift().convert_to<long long>();
    if (span < 0) continue;
    for (int k = 0; k < 12; ++k) {
      const long long m = rng.between(-span, span);
      const auto got = engine.bracket(BigInt(m));
      const auto want = model.correlation(j, ai, bi, m);
      ++queries;
      if (got.lower != want.lower || got.upper != want.upper) {
        o.require(false, "m=" + std::to_string(m) + " engine [" + to_string(got.lower) + ", " +
                             to_string(got.upper) + "] oracle [" + to_string(want.lower) + ", " +
                             to_string(want.upper) + "]");
        return;
      }
    }
  }
  o.detail << queries << " queries over " << schedules << " schedules";
}

bool g_conservation_broken = false;

void conservation(Outcome& o) {
  // Extra shift_levels workload so this criterion stands alone.
  Rng rng(10);
  for (int t = 0; t < 200; ++t) {
    const auto s = testing_helpers::random_schedule(rng, 20'000);
    const std::size_t j = 1 + rng.below(std::uint64_t{s.tower_count()});
    const LevelSet A = testing_helpers::random_levels(rng, s, j);
    const long long h = s.height(j).convert_to<long long>();
    shift_levels(s, A, BigInt(rng.between(-h, h)), s.tower_count() - j);
  }
  o.detail << conservation_checks() << " shift_levels calls checked in this process";
  o.require(!g_conservation_broken, "a conservation check failed");
}

struct Criterion {
  const char* name;
  std::function<void(Outcome&)> run;
};

const std::vector<Criterion> kCriteria{
    {"Ornstein property", ornstein},
    {"injectivity property", injectivity},
    {"Sidon single-column property", sidon_single_column},
    {"Sidon correlation bound", sidon_bound},
    {"decay certificate (psi = ln ln, 3 stages)", decay_certificate},
    {"averaging-operator decay", averaging_decay},
    {"joining mass bound", joining_mass},
    {"lemma decomposition identity", lemma_identity},
    {"oracle equivalence", oracle_equivalence},
    {"conservation", conservation},
};

bool run_one(std::size_t index) {
  Outcome o;
  try {
    kCriteria[index].run(o);
  } catch (const std::logic_error& e) {
    if (std::string(e.what()).find("not conserved") != std::string::npos) g_conservation_broken = true;
    o.require(false, e.what());
  } catch (const std::exception& e) {
    o.require(false, e.what());
  }
  std::cout << "criterion " << index + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  "
            << kCriteria[index].name << ": " << o.detail.str() << std::endl;
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      const long n = std::strtol(argv[++i], nullptr, 10);
      if (n < 1 || n > static_cast<long>(kCriteria.size())) {
        std::cerr << "criterion must be in [1, " << kCriteria.size() << "]\n";
        return 64;
      }
      selected.push_back(static_cast<std::size_t>(n - 1));
    } else {
      std::cerr << "usage: rank1_acceptance [--criterion N]\n";
      return 64;
    }
  }
  if (selected.empty())
    for (std::size_t i = 0; i < kCriteria.size(); ++i) selected.push_back(i);
  bool all = true;
  for (std::size_t i : selected) all = run_one(i) && all;
  return all ? 0 : 1;
}
