#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rank1/numeric.hpp"
#include "rank1/schedule.hpp"

namespace rank1 {

inline constexpr std::uint64_t kDefaultPositionCap = 10'000'000;

struct Limits {
  std::uint64_t position_cap = kDefaultPositionCap;

  /// Default limits, with RANK1_CAP from the environment when set.
  static Limits from_environment();
};

/// A union of levels T^i E_j of tower j. Levels are sorted and distinct.
struct LevelSet {
  std::size_t stage = 1;
  std::vector<BigInt> levels;

  /// Sorts, deduplicates and range-checks against h_stage.
  static LevelSet make(const ConstructionSchedule& schedule, std::size_t stage,
                       std::vector<BigInt> levels);

  std::size_t size() const { return levels.size(); }
  bool empty() const { return levels.empty(); }
  friend bool operator==(const LevelSet&, const LevelSet&) = default;
};

Rational measure(const ConstructionSchedule& schedule, const LevelSet& set);

/// E_j.
LevelSet base_level(const ConstructionSchedule& schedule, std::size_t j);
/// T^i E_j.
LevelSet tower_level(const ConstructionSchedule& schedule, std::size_t j, const BigInt& i);
/// U_j, every level of tower j.
LevelSet full_tower(const ConstructionSchedule& schedule, std::size_t j);

struct ColumnOffsets {
  std::size_t stage;
  std::vector<BigInt> offsets;
};

ColumnOffsets column_offsets(const ConstructionSchedule& schedule, std::size_t j);

struct PositionExpansion {
  std::size_t from_stage;
  std::size_t to_stage;
  std::vector<BigInt> positions;
};

/// Positions of level i of tower j inside tower J.
PositionExpansion expand_level(const ConstructionSchedule& schedule, std::size_t j, const BigInt& i,
                               std::size_t J, const Limits& limits = {});

/// Re-expresses a level set of tower j as a level set of tower J >= j.
LevelSet expand_set(const ConstructionSchedule& schedule, const LevelSet& set, std::size_t J,
                    const Limits& limits = {});

/// Level of tower j containing position x of tower J, or nullopt when x is a
/// spacer level relative to tower j.
std::optional<BigInt> locate_level(const ConstructionSchedule& schedule, std::size_t J,
                                   const BigInt& x, std::size_t j);

struct ShiftResult {
  /// Images that landed inside a tower, expressed at the deepest stage used.
  LevelSet resolved;
  /// Mass whose image left the deepest available tower.
  Rational unresolved_mass;
};

struct ShiftOptions {
  std::size_t max_extra_stages = 0;
  /// Stop deepening once the unresolved mass is at most this value.
  Rational stop_at = 0;
  Limits limits{};
};

/// Applies T^m to a level set of tower J (|m| <= h_J). Images leaving tower J
/// are followed into deeper towers, up to `max_extra_stages` more. Every call
/// checks measure(resolved) + unresolved_mass == measure(A) and throws
/// std::logic_error if it fails.
ShiftResult shift_levels(const ConstructionSchedule& schedule, const LevelSet& A, const BigInt& m,
                         const ShiftOptions& options);

ShiftResult shift_levels(const ConstructionSchedule& schedule, const LevelSet& A, const BigInt& m,
                         std::size_t max_extra_stages, const Limits& limits = {});

/// Number of conservation checks performed by shift_levels in this process.
std::uint64_t conservation_checks();

}  // namespace rank1
