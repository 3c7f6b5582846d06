#include "rank1/correl.hpp"

#include <algorithm>
#include <string>

namespace rank1 {

namespace {

// |{x in sorted a} ∩ {y in sorted b}|
std::size_t intersection_size(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto k = b.begin();
  while (i != a.end() && k != b.end()) {
    if (*i < *k) {
      ++i;
    } else if (*k < *i) {
      ++k;
    } else {
      ++count;
      ++i;
      ++k;
    }
  }
  return count;
}

}  // namespace

ToleranceUnreachable::ToleranceUnreachable(CorrelationResult best)
    : Error("tolerance unreachable for m = " + to_string(best.m) + ": best bracket [" +
            to_string(best.lower) + ", " + to_string(best.upper) + "] at tower " +
            std::to_string(best.stage_used)),
      best_(std::move(best)) {}

CorrelationEngine::CorrelationEngine(const ConstructionSchedule& schedule, LevelSet A, LevelSet B,
                                     Limits limits)
    : schedule_(schedule), a_(std::move(A)), b_(std::move(B)), limits_(limits) {
  if (a_.stage != b_.stage)
    throw InvalidArgument("correlation: A and B must be level sets of the same tower (got " +
                          std::to_string(a_.stage) + " and " + std::to_string(b_.stage) + ")");
}

BigInt CorrelationEngine::max_shift() const {
  return schedule_.height(schedule_.tower_count()) - schedule_.height(a_.stage) - 1;
}

const std::vector<BigInt>& CorrelationEngine::expansion(bool of_a, std::size_t J) {
  auto& cache = of_a ? a_cache_ : b_cache_;
  auto it = cache.find(J);
  if (it == cache.end()) {
    LevelSet lifted = expand_set(schedule_, of_a ? a_ : b_, J, limits_);
    it = cache.emplace(J, std::move(lifted.levels)).first;
  }
  return it->second;
}

CorrelationResult CorrelationEngine::bracket(const BigInt& m, const Rational& stop_at) {
  const bool forward = m >= 0;
  const BigInt shift = forward ? m : BigInt(-m);
  if (shift > max_shift())
    throw InvalidArgument("correlation: |m| = " + to_string(shift) + " must be below h_Jmax - h_j0 = " +
                          to_string(max_shift() + 1));
  const auto J = schedule_.working_stage(shift + schedule_.height(a_.stage));
  // max_shift() guarantees a working stage exists
  LevelSet source{*J, expansion(forward, *J)};
  ShiftOptions options;
  options.max_extra_stages = schedule_.tower_count() - *J;
  options.stop_at = stop_at;
  options.limits = limits_;
  ShiftResult shifted = shift_levels(schedule_, source, shift, options);

  const std::vector<BigInt>& target = expansion(!forward, shifted.resolved.stage);
  const std::size_t hits = intersection_size(shifted.resolved.levels, target);

  CorrelationResult out;
  out.m = m;
  out.stage_used = shifted.resolved.stage;
  out.lower = Rational(BigInt(hits), schedule_.base_denominator(out.stage_used));
  const Rational room = measure(schedule_, forward ? b_ : a_) - out.lower;
  out.upper = out.lower + std::min(shifted.unresolved_mass, room);
  return out;
}

CorrelationResult CorrelationEngine::at(const BigInt& m, const Rational& tolerance) {
  if (tolerance < 0) throw InvalidArgument("tolerance must be non-negative");
  CorrelationResult r = bracket(m, tolerance);
  if (r.upper - r.lower > tolerance) throw ToleranceUnreachable(std::move(r));
  return r;
}

CorrelationResult correlation(const ConstructionSchedule& schedule, const LevelSet& A,
                              const LevelSet& B, const BigInt& m, const Rational& tolerance,
                              const Limits& limits) {
  CorrelationEngine engine(schedule, A, B, limits);
  return engine.at(m, tolerance);
}

std::vector<CorrelationResult> correlation_series(const ConstructionSchedule& schedule,
                                                  const LevelSet& A, const LevelSet& B,
                                                  const BigInt& m_from, const BigInt& m_to,
                                                  const BigInt& stride, const Rational& tolerance,
                                                  const Limits& limits) {
  if (m_from > m_to) throw InvalidArgument("correlation_series: m_from must not exceed m_to");
  if (stride <= 0) throw InvalidArgument("correlation_series: stride must be positive");
  CorrelationEngine engine(schedule, A, B, limits);
  std::vector<CorrelationResult> out;
  for (BigInt m = m_from; m <= m_to; m += stride) out.push_back(engine.at(m, tolerance));
  return out;
}

std::vector<BigInt> spacer_drifts(const StageSpec& stage, const BigInt& H, std::uint64_t n) {
  if (n >= stage.r) throw InvalidArgument("drift length n must be below r_j");
  // prefix[t] = s(1) + ... + s(t)
  std::vector<BigInt> prefix(stage.r + 1);
  for (std::uint64_t t = 1; t <= stage.r; ++t) prefix[t] = prefix[t - 1] + stage.spacers[t - 1];
  std::vector<BigInt> drifts;
  for (std::uint64_t i = 1; i + n + 1 <= stage.r; ++i)
    drifts.push_back(prefix[i + n] - prefix[i] - H * n);
  return drifts;
}

std::vector<BigInt> spacer_drifts(const ConstructionSchedule& schedule, std::size_t j,
                                  std::uint64_t n) {
  const auto& alg = schedule.algebraic(j);
  if (!alg) throw InvalidArgument("stage " + std::to_string(j) + " has no algebraic parameters");
  return spacer_drifts(schedule.stage(j), alg->H, n);
}

AveragingEstimate averaging_norm(const ConstructionSchedule& schedule, std::size_t j,
                                 std::uint64_t n, const LevelSet& A, const Limits& limits) {
  const std::uint64_t r = schedule.cuts(j);
  if (n < 1 || n + 2 > r)
    throw InvalidArgument("averaging_norm: need 1 <= n <= r_j - 2 (r_j = " + std::to_string(r) + ")");
  AveragingEstimate est;
  est.j = j;
  est.n = n;
  est.window = r - n - 1;
  est.drifts = spacer_drifts(schedule, j, n);

  CorrelationEngine engine(schedule, A, A, limits);
  std::map<BigInt, CorrelationResult> memo;
  auto corr = [&](BigInt d) -> const CorrelationResult& {
    if (d < 0) d = -d;
    auto it = memo.find(d);
    if (it == memo.end()) it = memo.emplace(d, engine.bracket(d)).first;
    return it->second;
  };

  // <T^a chi_A, T^b chi_A> = mu(T^{a-b} A ∩ A)
  Rational sum, sum_lower;
  for (const BigInt& a : est.drifts) {
    for (const BigInt& b : est.drifts) {
      const auto& c = corr(a - b);
      sum += c.upper;
      sum_lower += c.lower;
      est.exact = est.exact && c.exact();
    }
  }
  const Rational w2(BigInt(est.window) * est.window);
  est.value = sum / w2;
  est.value_lower = sum_lower / w2;

  // sum over s, s' in [-r, r]: the shift d = s - s' occurs 2r + 1 - |d| times
  Rational majorant;
  const std::int64_t span = static_cast<std::int64_t>(r);
  for (std::int64_t d = -2 * span; d <= 2 * span; ++d) {
    const auto& c = corr(BigInt(d));
    majorant += c.lower * (2 * span + 1 - (d < 0 ? -d : d));
    est.exact = est.exact && c.exact();
  }
  const BigInt eps_r = BigInt(r - n);  // eps * r_j with eps = 1 - n / r_j
  est.bound = majorant / Rational(eps_r * eps_r);
  return est;
}

}  // namespace rank1
