#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rank1/schedule.hpp"

namespace rank1::cli {

/// Where a command gets its schedule: a JSON file or inline family parameters.
struct ScheduleSource {
  std::string path;
  std::string family;
  std::string h1 = "1";
  std::vector<std::string> stages;  // explicit: "r:s1,s2,..."
  std::vector<std::uint64_t> primes;
  std::string H_rule = "r";
  std::string s_last_rule = "0";
  std::vector<std::uint64_t> cuts;
  std::uint64_t growth = 2;
  std::string psi = "lnln";
  std::size_t stage_count = 3;
  std::string C = "1";
  std::string spacing = "growth";
  std::uint64_t r_cap = 4096;

  void add_options(CLI::App& app);
  ConstructionSchedule load() const;
};

}  // namespace rank1::cli
