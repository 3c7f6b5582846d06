#pragma once

#include "rank1/random.hpp"
#include "rank1/schedule.hpp"
#include "rank1/tower.hpp"

namespace testing_helpers {

/// Small random explicit schedule whose last tower has at most `max_cells` levels.
inline rank1::ConstructionSchedule random_schedule(rank1::Rng& rng, long long max_cells) {
  for (;;) {
    const rank1::BigInt h1(rng.between(0, 3));
    const int count = static_cast<int>(rng.between(2, 4));
    std::vector<rank1::StageSpec> stages;
    rank1::BigInt h = h1;
    for (int k = 0; k < count; ++k) {
      rank1::StageSpec st;
      st.r = static_cast<std::uint64_t>(rng.between(2, 4));
      const long long top = h.convert_to<long long>() + 3;
      for (std::uint64_t c = 0; c < st.r; ++c) st.spacers.emplace_back(rng.between(0, top));
      h = rank1::derive_heights(h, std::span(&st, 1)).back();
      stages.push_back(std::move(st));
    }
    if (h + 1 <= max_cells) return rank1::ConstructionSchedule(h1, std::move(stages));
  }
}

/// Random non-empty subset of the levels of tower j.
inline rank1::LevelSet random_levels(rank1::Rng& rng, const rank1::ConstructionSchedule& s,
                                     std::size_t j, std::size_t max_size = 6) {
  const long long h = s.height(j).convert_to<long long>();
  const std::size_t n = 1 + rng.below(static_cast<std::uint64_t>(max_size));
  std::vector<rank1::BigInt> xs;
  for (std::size_t k = 0; k < n; ++k) xs.emplace_back(rng.between(0, h));
  return rank1::LevelSet::make(s, j, std::move(xs));
}

}  // namespace testing_helpers
