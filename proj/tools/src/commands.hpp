#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schedule_source.hpp"

namespace rank1::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kIndeterminate = 2, kUsage = 64 };

struct RunConfig {
  std::string command;
  ScheduleSource source;
  std::string out;
  std::string format = "json";
  std::uint64_t cap = 0;  // 0: default or RANK1_CAP
  std::string tolerance = "1/1000000000";
  std::uint64_t seed = 1;

  // verify
  std::vector<std::string> props;
  std::uint64_t budget = 1'000'000;
  std::size_t samples = 100;
  std::string decay_C;
  std::string decay_fit = "chain";
  std::size_t trials = 100;
  std::size_t j_max = 0;  // 0: every stage

  // correlate / sweep
  std::string set_a = "E_1";
  std::string set_b;
  std::string m = "0";
  std::string m_from = "0";
  std::string m_to = "0";
  std::string stride = "1";
  std::string bound = "none";

  // coeffs
  std::size_t j = 1;
  std::vector<std::string> l = {"0"};
};

int run_build(const RunConfig& config);
int run_verify(const RunConfig& config);
int run_correlate(const RunConfig& config);
int run_sweep(const RunConfig& config);
int run_coeffs(const RunConfig& config);

}  // namespace rank1::cli
