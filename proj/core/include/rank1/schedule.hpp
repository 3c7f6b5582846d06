#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rank1/numeric.hpp"
#include "rank1/slow_function.hpp"

namespace rank1 {

/// One cutting-and-stacking step: the tower is cut into `r` columns and
/// column c receives spacers[c-1] spacer levels on top.
struct StageSpec {
  std::uint64_t r = 2;
  std::vector<BigInt> spacers;

  void validate() const;
  friend bool operator==(const StageSpec&, const StageSpec&) = default;
};

/// Parameters of a stage whose spacers come from powers of a primitive root:
/// s(i) = H + rep(q^i) - rep(q^{i+1}) for i < r, s(r) = s_last.
struct AlgebraicStageParams {
  std::uint64_t r = 0;
  std::uint64_t q = 0;
  BigInt H;
  BigInt s_last;

  void validate() const;
  friend bool operator==(const AlgebraicStageParams&, const AlgebraicStageParams&) = default;
};

struct ScheduleMeta {
  std::string family = "explicit";
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
};

/// A finite rank-one construction: the height h1 of tower 1 (which has
/// h1 + 1 levels) and stages j = 1..K. Tower j+1 is built from tower j by
/// stage j, so the schedule describes towers 1..K+1.
///
/// Stage and tower indices are 1-based throughout. The base E_1 has measure 1,
/// so mu(E_j) = 1 / (r_1 * ... * r_{j-1}).
class ConstructionSchedule {
 public:
  ConstructionSchedule(BigInt h1, std::vector<StageSpec> stages, ScheduleMeta meta = {},
                       std::vector<std::optional<AlgebraicStageParams>> algebraic = {});

  const BigInt& h1() const { return heights_.front(); }
  std::size_t stage_count() const { return stages_.size(); }
  std::size_t tower_count() const { return heights_.size(); }

  const StageSpec& stage(std::size_t j) const;
  const std::vector<StageSpec>& stages() const { return stages_; }
  std::uint64_t cuts(std::size_t j) const { return stage(j).r; }

  /// h_j for j = 1..K+1.
  const BigInt& height(std::size_t j) const;
  const std::vector<BigInt>& heights() const { return heights_; }

  /// Base positions of the r_j columns of tower j inside tower j+1.
  const std::vector<BigInt>& offsets(std::size_t j) const;

  /// r_1 * ... * r_{j-1}; the number of stage-j levels per stage-1 level.
  const BigInt& base_denominator(std::size_t j) const;
  Rational base_measure(std::size_t j) const;

  const std::optional<AlgebraicStageParams>& algebraic(std::size_t j) const;
  const ScheduleMeta& meta() const { return meta_; }

  /// Smallest tower index J with h_J >= reach, if any.
  std::optional<std::size_t> working_stage(const BigInt& reach) const;

  friend bool operator==(const ConstructionSchedule& a, const ConstructionSchedule& b) {
    return a.heights_ == b.heights_ && a.stages_ == b.stages_;
  }

 private:
  void check_tower(std::size_t j) const;
  void check_stage(std::size_t j) const;

  std::vector<StageSpec> stages_;
  std::vector<BigInt> heights_;
  std::vector<std::vector<BigInt>> offsets_;
  std::vector<BigInt> denominators_;
  std::vector<std::optional<AlgebraicStageParams>> algebraic_;
  ScheduleMeta meta_;
};

/// h_1..h_{K+1} from h_{j+1} + 1 = (h_j + 1) r_j + sum_i s_j(i).
std::vector<BigInt> derive_heights(const BigInt& h1, std::span<const StageSpec> stages);

/// rep(q^i mod r) in {1..r-1}.
std::uint64_t power_representative(std::uint64_t q, std::uint64_t i, std::uint64_t r);

StageSpec algebraic_spacers(const AlgebraicStageParams& params);

/// A per-stage value of the form base + add, where base is 0, the cutting
/// number r_j, or the current height h_j. Parsed from "7", "r", "r+2", "h".
struct StageRule {
  enum class Base { Zero, Cuts, Height };
  Base base = Base::Zero;
  BigInt add;

  BigInt evaluate(std::uint64_t r, const BigInt& h) const;
  std::string str() const;
  static StageRule parse(std::string_view text);
};

/// Algebraic family: one stage per prime, q_j the smallest primitive root.
ConstructionSchedule algebraic_schedule(const BigInt& h1, std::span<const std::uint64_t> primes,
                                        const StageRule& H_rule = {StageRule::Base::Cuts, 0},
                                        const StageRule& s_last_rule = {});

/// Spacers with s(1) >= g (h+1) and s(i+1) >= g (s(i) + h + 1), the minimal
/// integer choice of the domination chain.
StageSpec sidon_growth_stage(const BigInt& h, std::uint64_t r, std::uint64_t growth_factor);

ConstructionSchedule sidon_growth_schedule(const BigInt& h1, std::span<const std::uint64_t> cuts,
                                           std::uint64_t growth_factor = 2);

/// Spacers placing column c at (2h+1) * b_c, where b_0 < ... < b_{r-1} is the
/// Sidon set 2pk + (k^2 mod p), p the smallest prime >= r. The last spacer
/// is h. Tower height grows like h r^2.
StageSpec sidon_set_stage(const BigInt& h, std::uint64_t r);

enum class DecaySpacing { Growth, SidonSet };
std::string_view to_string(DecaySpacing spacing);
DecaySpacing parse_decay_spacing(std::string_view name);

struct DecayOptions {
  DecaySpacing spacing = DecaySpacing::Growth;
  std::uint64_t growth_factor = 2;
  std::uint64_t r_cap = 4096;
};

/// Record of the threshold check that fixed r_j.
struct DecayCertificate {
  std::size_t stage;
  std::uint64_t r;
  BigInt h;
  BigInt h_next;
  Enclosure psi_next;   // psi(h_{j+1})
  Enclosure sqrt_h;     // sqrt(h_j)
};

/// No cutting number up to the cap certifies psi(h_{j+1}) >= sqrt(h_j).
class ThresholdUnreachable : public Error {
 public:
  ThresholdUnreachable(std::size_t stage, std::uint64_t cap, Enclosure attained,
                       Enclosure required);
  std::size_t stage() const { return stage_; }
  std::uint64_t cap() const { return cap_; }
  Enclosure attained() const { return attained_; }
  Enclosure required() const { return required_; }

 private:
  std::size_t stage_;
  std::uint64_t cap_;
  Enclosure attained_;
  Enclosure required_;
};

/// Chooses r_j as the smallest cutting number whose tower certifies
/// psi(h_{j+1}) >= sqrt(h_j). Certificates are stored in meta.params.
ConstructionSchedule decay_rate_schedule(const BigInt& h1, SlowFunction psi, const Rational& C_hint,
                                         std::size_t max_stages, const DecayOptions& options = {});

std::vector<DecayCertificate> decay_certificates(const ConstructionSchedule& schedule);

}  // namespace rank1
