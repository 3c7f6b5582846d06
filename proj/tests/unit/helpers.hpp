#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "rank1/schedule.hpp"
#include "rank1/tower.hpp"

namespace testing_helpers {

using rank1::BigInt;
using rank1::ConstructionSchedule;
using rank1::StageSpec;

inline StageSpec stage(std::uint64_t r, std::initializer_list<long long> spacers) {
  StageSpec st;
  st.r = r;
  for (long long s : spacers) st.spacers.emplace_back(s);
  return st;
}

inline ConstructionSchedule explicit_schedule(long long h1, std::vector<StageSpec> stages) {
  return ConstructionSchedule(BigInt(h1), std::move(stages));
}

inline ConstructionSchedule algebraic(long long h1, std::vector<std::uint64_t> primes,
                                      const char* H = "r", const char* s_last = "0") {
  return rank1::algebraic_schedule(BigInt(h1), primes, rank1::StageRule::parse(H),
                                   rank1::StageRule::parse(s_last));
}

inline ConstructionSchedule sidon(long long h1, std::vector<std::uint64_t> cuts,
                                  std::uint64_t g = 2) {
  return rank1::sidon_growth_schedule(BigInt(h1), cuts, g);
}

inline rank1::LevelSet levels(const ConstructionSchedule& s, std::size_t j,
                              std::initializer_list<long long> xs) {
  std::vector<BigInt> v;
  for (long long x : xs) v.emplace_back(x);
  return rank1::LevelSet::make(s, j, std::move(v));
}

}  // namespace testing_helpers
