#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "rank1/numeric.hpp"
#include "rank1/schedule.hpp"
#include "rank1/tower.hpp"

namespace rank1 {

/// Bracket [lower, upper] for mu(T^m A ∩ B).
struct CorrelationResult {
  BigInt m;
  Rational lower;
  Rational upper;
  std::size_t stage_used = 0;

  bool exact() const { return lower == upper; }
};

/// The requested tolerance could not be met with the towers available.
class ToleranceUnreachable : public Error {
 public:
  explicit ToleranceUnreachable(CorrelationResult best);
  const CorrelationResult& best() const { return best_; }

 private:
  CorrelationResult best_;
};

/// Correlations of two fixed level sets over many shifts. Expansions of A and
/// B are cached per tower, so a sweep pays for each expansion once.
///
/// Negative shifts use mu(T^m A ∩ B) = mu(T^{-m} B ∩ A), so every image is
/// pushed upward and only overflow past the top of a tower is ever unresolved.
/// Upper bounds are lower + min(unresolved, mu(target) - lower).
class CorrelationEngine {
 public:
  CorrelationEngine(const ConstructionSchedule& schedule, LevelSet A, LevelSet B,
                    Limits limits = {});

  /// Best bracket available, deepening until the unresolved mass is at most
  /// `stop_at` or the last tower is reached.
  CorrelationResult bracket(const BigInt& m, const Rational& stop_at = 0);

  /// Bracket with upper - lower <= tolerance; throws ToleranceUnreachable.
  CorrelationResult at(const BigInt& m, const Rational& tolerance);

  /// Largest |m| accepted: h_{J_max} - h_{j0} - 1.
  BigInt max_shift() const;

  const LevelSet& a() const { return a_; }
  const LevelSet& b() const { return b_; }

 private:
  const std::vector<BigInt>& expansion(bool of_a, std::size_t J);

  const ConstructionSchedule& schedule_;
  LevelSet a_;
  LevelSet b_;
  Limits limits_;
  std::map<std::size_t, std::vector<BigInt>> a_cache_;
  std::map<std::size_t, std::vector<BigInt>> b_cache_;
};

/// mu(T^m A ∩ B) for A, B at a common stage.
CorrelationResult correlation(const ConstructionSchedule& schedule, const LevelSet& A,
                              const LevelSet& B, const BigInt& m,
                              const Rational& tolerance = default_tolerance(),
                              const Limits& limits = {});

/// Results for m = m_from, m_from + stride, ..., <= m_to.
std::vector<CorrelationResult> correlation_series(const ConstructionSchedule& schedule,
                                                  const LevelSet& A, const LevelSet& B,
                                                  const BigInt& m_from, const BigInt& m_to,
                                                  const BigInt& stride,
                                                  const Rational& tolerance = default_tolerance(),
                                                  const Limits& limits = {});

/// Squared L2 norm of the averaging operator applied to the indicator of A,
/// and the comparison quantity built from every shift in [-r_j, r_j].
struct AveragingEstimate {
  std::size_t j = 0;
  std::uint64_t n = 0;
  std::uint64_t window = 0;  // r_j - n - 1
  /// Upper bound for the squared norm of the average of T^{S_j(i,n)} chi_A.
  Rational value;
  /// Lower bound for the same squared norm.
  Rational value_lower;
  /// Lower bound for (1/(eps r_j))^2 ||sum_{|s|<=r_j} T^s chi_A||^2, eps = 1 - n/r_j.
  Rational bound;
  bool exact = true;
  /// Partial-sum drifts S_j(i, n), i = 1..window.
  std::vector<BigInt> drifts;
};

/// S_j(i, n) = sum_{k=1..n} s_j(i+k) - n H_j for i = 1..r_j - n - 1, from the
/// stage's spacers. Requires algebraic parameters on stage j.
std::vector<BigInt> spacer_drifts(const ConstructionSchedule& schedule, std::size_t j,
                                  std::uint64_t n);
std::vector<BigInt> spacer_drifts(const StageSpec& stage, const BigInt& H, std::uint64_t n);

AveragingEstimate averaging_norm(const ConstructionSchedule& schedule, std::size_t j,
                                 std::uint64_t n, const LevelSet& A, const Limits& limits = {});

}  // namespace rank1
