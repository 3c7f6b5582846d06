#pragma once

#include <cstddef>
#include <vector>

#include "rank1/numeric.hpp"
#include "rank1/schedule.hpp"

namespace oracle {

using rank1::BigInt;
using rank1::Rational;

struct Interval {
  Rational lo;
  Rational hi;
  Rational length() const { return hi - lo; }
};

/// Builds every tower as explicit half-open intervals of the half line:
/// tower 1 is [0,1), [1,2), ..., and each stage slices every level into r
/// equal pieces, stacks the slices left to right and takes spacer intervals
/// from unused space to the right. T moves each level of the last tower onto
/// the level above it by translation.
class IntervalModel {
 public:
  explicit IntervalModel(const rank1::ConstructionSchedule& schedule);

  std::size_t tower_count() const { return towers_.size(); }
  std::size_t level_count(std::size_t j) const { return towers_[j - 1].size(); }
  const Interval& level(std::size_t j, std::size_t i) const { return towers_[j - 1][i]; }

  /// Union of the given levels of tower j as sorted, disjoint intervals.
  std::vector<Interval> region(std::size_t j, const std::vector<std::size_t>& levels) const;

  struct Answer {
    Rational lower;
    Rational upper;
  };

  /// mu(T^m A ∩ B) for A, B given as level lists of tower j. Mass pushed past
  /// the top of the last tower is unknown and widens the upper bound.
  Answer correlation(std::size_t j, const std::vector<std::size_t>& A,
                     const std::vector<std::size_t>& B, long long m) const;

 private:
  std::vector<std::vector<Interval>> towers_;
};

}  // namespace oracle
