#include "rank1/tower.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iterator>
#include <stdexcept>
#include <string>

namespace rank1 {

namespace {

std::atomic<std::uint64_t> g_conservation_checks{0};

void check_capacity(const BigInt& count, const Limits& limits) {
  if (count > BigInt(limits.position_cap)) throw CapExceeded(count, limits.position_cap);
}

// Positions of tower j re-expressed one stage up. Sorted input gives sorted
// output because the column copies occupy disjoint, increasing ranges.
std::vector<BigInt> lift_once(const ConstructionSchedule& schedule, const std::vector<BigInt>& positions,
                              std::size_t j) {
  const auto& offs = schedule.offsets(j);
  std::vector<BigInt> out;
  out.reserve(positions.size() * offs.size());
  for (const BigInt& o : offs) {
    for (const BigInt& p : positions) out.push_back(o + p);
  }
  return out;
}

}  // namespace

Limits Limits::from_environment() {
  Limits limits;
  if (const char* env = std::getenv("RANK1_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
      throw InvalidArgument(std::string("RANK1_CAP must be a positive integer, got '") + env + "'");
    limits.position_cap = v;
  }
  return limits;
}

LevelSet LevelSet::make(const ConstructionSchedule& schedule, std::size_t stage,
                        std::vector<BigInt> levels) {
  const BigInt& h = schedule.height(stage);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (!levels.empty() && (levels.front() < 0 || levels.back() > h))
    throw InvalidArgument("level index outside [0, " + to_string(h) + "] for tower " +
                          std::to_string(stage));
  return LevelSet{stage, std::move(levels)};
}

Rational measure(const ConstructionSchedule& schedule, const LevelSet& set) {
  return Rational(BigInt(set.levels.size()), schedule.base_denominator(set.stage));
}

LevelSet base_level(const ConstructionSchedule& schedule, std::size_t j) {
  return LevelSet::make(schedule, j, {BigInt(0)});
}

LevelSet tower_level(const ConstructionSchedule& schedule, std::size_t j, const BigInt& i) {
  return LevelSet::make(schedule, j, {i});
}

LevelSet full_tower(const ConstructionSchedule& schedule, std::size_t j) {
  const BigInt& h = schedule.height(j);
  check_capacity(h + 1, Limits::from_environment());
  std::vector<BigInt> levels;
  levels.reserve(static_cast<std::size_t>(h + 1));
  for (BigInt i = 0; i <= h; ++i) levels.push_back(i);
  return LevelSet{j, std::move(levels)};
}

ColumnOffsets column_offsets(const ConstructionSchedule& schedule, std::size_t j) {
  if (j >= schedule.tower_count())
    throw InvalidArgument("column_offsets: stage " + std::to_string(j) + " has no successor tower");
  return ColumnOffsets{j, schedule.offsets(j)};
}

PositionExpansion expand_level(const ConstructionSchedule& schedule, std::size_t j, const BigInt& i,
                               std::size_t J, const Limits& limits) {
  LevelSet lifted = expand_set(schedule, tower_level(schedule, j, i), J, limits);
  return PositionExpansion{j, J, std::move(lifted.levels)};
}

LevelSet expand_set(const ConstructionSchedule& schedule, const LevelSet& set, std::size_t J,
                    const Limits& limits) {
  if (J < set.stage || J > schedule.tower_count())
    throw InvalidArgument("expand_set: target tower " + std::to_string(J) + " must lie in [" +
                          std::to_string(set.stage) + ", " +
                          std::to_string(schedule.tower_count()) + "]");
  BigInt count = BigInt(set.levels.size()) * schedule.base_denominator(J) /
                 schedule.base_denominator(set.stage);
  check_capacity(count, limits);
  std::vector<BigInt> positions = set.levels;
  for (std::size_t l = set.stage; l < J; ++l) positions = lift_once(schedule, positions, l);
  return LevelSet{J, std::move(positions)};
}

std::optional<BigInt> locate_level(const ConstructionSchedule& schedule, std::size_t J,
                                   const BigInt& x, std::size_t j) {
  if (j > J) throw InvalidArgument("locate_level: target tower must not be deeper than J");
  if (x < 0 || x > schedule.height(J)) return std::nullopt;
  BigInt pos = x;
  for (std::size_t l = J; l > j; --l) {
    const auto& offs = schedule.offsets(l - 1);
    auto it = std::upper_bound(offs.begin(), offs.end(), pos);
    // offs.front() == 0 <= pos, so it != begin
    const BigInt& base = *std::prev(it);
    pos -= base;
    if (pos > schedule.height(l - 1)) return std::nullopt;
  }
  return pos;
}

ShiftResult shift_levels(const ConstructionSchedule& schedule, const LevelSet& A, const BigInt& m,
                         const ShiftOptions& options) {
  std::size_t stage = A.stage;
  const BigInt abs_m = m < 0 ? BigInt(-m) : m;
  if (abs_m > schedule.height(stage))
    throw InvalidArgument("shift_levels: |m| = " + to_string(abs_m) + " exceeds h_" +
                          std::to_string(stage) + " = " + to_string(schedule.height(stage)));

  std::vector<BigInt> resolved;
  std::vector<BigInt> pending = A.levels;
  std::vector<BigInt> overflow;
  std::vector<BigInt> landed;
  std::size_t extra = 0;
  for (;;) {
    const BigInt& h = schedule.height(stage);
    landed.clear();
    overflow.clear();
    for (const BigInt& p : pending) {
      BigInt q = p + m;
      if (q >= 0 && q <= h) {
        landed.push_back(std::move(q));
      } else {
        overflow.push_back(p);
      }
    }
    std::vector<BigInt> merged;
    merged.reserve(resolved.size() + landed.size());
    std::merge(std::make_move_iterator(resolved.begin()), std::make_move_iterator(resolved.end()),
               std::make_move_iterator(landed.begin()), std::make_move_iterator(landed.end()),
               std::back_inserter(merged));
    resolved = std::move(merged);

    if (overflow.empty() || extra >= options.max_extra_stages ||
        stage >= schedule.tower_count())
      break;
    if (Rational(BigInt(overflow.size()), schedule.base_denominator(stage)) <= options.stop_at)
      break;
    check_capacity(BigInt(resolved.size() + overflow.size()) * schedule.cuts(stage),
                   options.limits);
    resolved = lift_once(schedule, resolved, stage);
    pending = lift_once(schedule, overflow, stage);
    ++stage;
    ++extra;
  }

  const std::size_t before = resolved.size();
  resolved.erase(std::unique(resolved.begin(), resolved.end()), resolved.end());
  ShiftResult result{LevelSet{stage, std::move(resolved)},
                     Rational(BigInt(overflow.size()), schedule.base_denominator(stage))};
  ++g_conservation_checks;
  if (before != result.resolved.levels.size() ||
      measure(schedule, result.resolved) + result.unresolved_mass != measure(schedule, A))
    throw std::logic_error("shift_levels: measure not conserved for m = " + to_string(m));
  return result;
}

ShiftResult shift_levels(const ConstructionSchedule& schedule, const LevelSet& A, const BigInt& m,
                         std::size_t max_extra_stages, const Limits& limits) {
  ShiftOptions options;
  options.max_extra_stages = max_extra_stages;
  options.limits = limits;
  return shift_levels(schedule, A, m, options);
}

std::uint64_t conservation_checks() { return g_conservation_checks.load(); }

}  // namespace rank1
