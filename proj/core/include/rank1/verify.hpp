#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rank1/correl.hpp"
#include "rank1/numeric.hpp"
#include "rank1/random.hpp"
#include "rank1/schedule.hpp"
#include "rank1/slow_function.hpp"
#include "rank1/tower.hpp"

namespace rank1 {

enum class Verdict { Pass, Fail, Indeterminate };

std::string_view to_string(Verdict verdict);

/// Named values reproducing one violation (or one unresolved comparison).
struct Witness {
  std::vector<std::pair<std::string, std::string>> fields;

  Witness& add(std::string name, std::string value);
  Witness& add(std::string name, const BigInt& value);
  Witness& add(std::string name, const Rational& value);
  Witness& add(std::string name, std::uint64_t value);
  /// Value of a field; throws if absent.
  const std::string& at(std::string_view name) const;
};

struct VerificationReport {
  std::string property;
  std::size_t stage_from = 0;
  std::size_t stage_to = 0;
  Verdict verdict = Verdict::Pass;
  std::vector<Witness> witnesses;
  /// Counters such as "checks" and "violations", in insertion order.
  std::vector<std::pair<std::string, std::uint64_t>> stats;

  static constexpr std::size_t kMaxWitnesses = 16;

  void count(std::string_view name, std::uint64_t n = 1);
  std::uint64_t stat(std::string_view name) const;
  /// Records a violation; keeps the first kMaxWitnesses witnesses.
  void fail(Witness w);
  /// Records an undecided comparison; never overrides Fail.
  void undecided(Witness w);
  bool passed() const { return verdict == Verdict::Pass; }
};

/// Combined verdict: any Fail, else any Indeterminate, else Pass.
Verdict combine(const std::vector<VerificationReport>& reports);

/// -r <= S(i, n) <= r for every n < r and i = 1..r-n-1.
VerificationReport verify_ornstein(const ConstructionSchedule& schedule, std::size_t j);
VerificationReport verify_ornstein(const StageSpec& stage, const BigInt& H, std::size_t j);

/// i -> S(i, n) is injective on 1..r-n-1 for every 1 <= n < r.
VerificationReport verify_injectivity(const ConstructionSchedule& schedule, std::size_t j);
VerificationReport verify_injectivity(const StageSpec& stage, const BigInt& H, std::size_t j);

/// For each m in (h_j, h_{j+1}], at most one ordered column pair (c, c') of
/// stage j has |o(c') - o(c) - m| <= h_j. Exhaustive when the range has at
/// most `budget` values. Otherwise every left end of an alignment window is
/// tested (the pair count only rises there, so this is still complete) plus
/// evenly spaced samples.
VerificationReport verify_sidon(const ConstructionSchedule& schedule, std::size_t j,
                                std::uint64_t budget);

/// Number of ordered column pairs of stage j aligned by T^m.
std::uint64_t aligned_column_pairs(const ConstructionSchedule& schedule, std::size_t j,
                                   const BigInt& m);

/// Shifts in (h_j, h_{j+1}] for j0 <= j < J_max - 1: every column-offset
/// difference of stage j in range, plus `random_per_stage` uniform draws.
std::vector<BigInt> decay_sample_shifts(const ConstructionSchedule& schedule, std::size_t j0,
                                        std::size_t random_per_stage, Rng& rng);

/// Smallest dyadic C with mu(A ∩ T^m A) <= C psi(m)/sqrt(m) over the given
/// shifts (correlation upper bounds).
Rational fit_decay_constant(const ConstructionSchedule& schedule, const LevelSet& A,
                            SlowFunction psi, const std::vector<BigInt>& shifts,
                            const Limits& limits = {});

/// Dyadic C >= mu(A) sqrt(h_{j+1}/h_j) / r_j over the stages sampled by
/// decay_sample_shifts. Together with mu(A ∩ T^m A) <= mu(A)/r_j and
/// psi(h_{j+1}) >= sqrt(h_j) this gives the decay bound with one constant.
Rational chain_decay_constant(const ConstructionSchedule& schedule, const LevelSet& A);

/// mu(A ∩ T^m A) <= C psi(m)/sqrt(m) for every sampled m, plus the premise
/// psi(h_{j+1})/sqrt(h_{j+1}) <= psi(m)/sqrt(m) on the stage containing m.
VerificationReport verify_decay(const ConstructionSchedule& schedule, const LevelSet& A,
                                SlowFunction psi, const Rational& C,
                                const std::vector<BigInt>& m_samples, const Limits& limits = {});

struct CoefficientEntry {
  Rational lower;
  Rational upper;
  bool exact() const { return lower == upper; }
};

/// a_j^k = mu(T^l E_j ∩ T^k E_j) / mu(E_j) for |k| <= h_j; zero entries omitted.
struct JoiningCoefficients {
  std::size_t j = 0;
  BigInt l;
  std::map<BigInt, CoefficientEntry> a;
  std::size_t stage_used = 0;
  /// Sum of lower bounds.
  Rational mass_lower;
  /// Certified upper bound on the sum.
  Rational mass_upper;
  bool exact = true;

  /// Bracket for a_j^k (zero when absent).
  CoefficientEntry at(const BigInt& k) const;
};

JoiningCoefficients joining_coefficients(const ConstructionSchedule& schedule, std::size_t j,
                                         const BigInt& l, const Limits& limits = {});

/// Sum of a_j^k <= 2, and for l = 0, a_j^0 = 1 with every other entry 0.
VerificationReport verify_joining_mass(const ConstructionSchedule& schedule, std::size_t j,
                                       const BigInt& l, const Limits& limits = {});

/// N(k, A, B) = #{(i, i') in A x B : i' - i = k}, zero counts omitted.
std::map<BigInt, std::uint64_t> block_counts(const LevelSet& A, const LevelSet& B);

/// Delta^l(A x B) = mu(T^l A ∩ B) against mu(E_j) * sum_k a_j^k N(k, A, B).
VerificationReport verify_lemma_decomposition(const ConstructionSchedule& schedule, std::size_t j,
                                              const BigInt& l, const LevelSet& A,
                                              const LevelSet& B, const Limits& limits = {});

/// `trials` random (A, B, l) draws at stage j: A and B are random level
/// subsets of tower j, |l| at most min(h_{j+1} + h_j, h_Jmax - h_j - 1).
VerificationReport verify_lemma_trials(const ConstructionSchedule& schedule, std::size_t j,
                                       std::size_t trials, Rng& rng, const Limits& limits = {});

}  // namespace rank1
