#include "rank1/schedule.hpp"

#include <cstdio>
#include <string>

#include "rank1/number_theory.hpp"

namespace rank1 {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void StageSpec::validate() const {
  if (r < 2) throw InvalidArgument("stage cutting number r must be >= 2, got " + std::to_string(r));
  if (spacers.size() != r)
    throw InvalidArgument("stage with r=" + std::to_string(r) + " has " +
                          std::to_string(spacers.size()) + " spacer entries");
  for (std::size_t i = 0; i < spacers.size(); ++i) {
    if (spacers[i] < 0)
      throw InvalidArgument("spacer s(" + std::to_string(i + 1) + ") is negative");
  }
}

void AlgebraicStageParams::validate() const {
  if (r < 3) throw InvalidArgument("algebraic stage needs a prime r >= 3");
  if (std::uint64_t f = smallest_factor(r); f != r) throw NotPrime(r, f);
  if (!is_primitive_root(q, r))
    throw InvalidArgument(std::to_string(q) + " is not a primitive root mod " + std::to_string(r));
  if (H < BigInt(r))
    throw InvalidArgument("algebraic stage requires H >= r (H=" + to_string(H) +
                          ", r=" + std::to_string(r) + ")");
  if (s_last < 0) throw InvalidArgument("s_last must be non-negative");
}

std::vector<BigInt> derive_heights(const BigInt& h1, std::span<const StageSpec> stages) {
  if (h1 < 0) throw InvalidArgument("h1 must be non-negative");
  std::vector<BigInt> heights;
  heights.reserve(stages.size() + 1);
  heights.push_back(h1);
  for (const StageSpec& st : stages) {
    st.validate();
    BigInt next = (heights.back() + 1) * st.r;
    for (const BigInt& s : st.spacers) next += s;
    heights.push_back(next - 1);
  }
  return heights;
}

ConstructionSchedule::ConstructionSchedule(BigInt h1, std::vector<StageSpec> stages,
                                           ScheduleMeta meta,
                                           std::vector<std::optional<AlgebraicStageParams>> algebraic)
    : stages_(std::move(stages)),
      heights_(derive_heights(h1, stages_)),
      algebraic_(std::move(algebraic)),
      meta_(std::move(meta)) {
  algebraic_.resize(stages_.size());
  offsets_.reserve(stages_.size());
  denominators_.reserve(heights_.size());
  denominators_.push_back(1);
  for (std::size_t j = 0; j < stages_.size(); ++j) {
    const StageSpec& st = stages_[j];
    if (algebraic_[j]) {
      algebraic_[j]->validate();
      if (algebraic_spacers(*algebraic_[j]) != st)
        throw InvalidArgument("stage " + std::to_string(j + 1) +
                              " spacers do not match its algebraic parameters");
    }
    std::vector<BigInt> offs(st.r);
    for (std::size_t c = 1; c < st.r; ++c) offs[c] = offs[c - 1] + heights_[j] + 1 + st.spacers[c - 1];
    offsets_.push_back(std::move(offs));
    denominators_.push_back(denominators_.back() * st.r);
  }
}

void ConstructionSchedule::check_tower(std::size_t j) const {
  if (j < 1 || j > heights_.size())
    throw InvalidArgument("tower index " + std::to_string(j) + " outside 1.." +
                          std::to_string(heights_.size()));
}

void ConstructionSchedule::check_stage(std::size_t j) const {
  if (j < 1 || j > stages_.size())
    throw InvalidArgument("stage index " + std::to_string(j) + " outside 1.." +
                          std::to_string(stages_.size()));
}

const StageSpec& ConstructionSchedule::stage(std::size_t j) const {
  check_stage(j);
  return stages_[j - 1];
}

const BigInt& ConstructionSchedule::height(std::size_t j) const {
  check_tower(j);
  return heights_[j - 1];
}

const std::vector<BigInt>& ConstructionSchedule::offsets(std::size_t j) const {
  check_stage(j);
  return offsets_[j - 1];
}

const BigInt& ConstructionSchedule::base_denominator(std::size_t j) const {
  check_tower(j);
  return denominators_[j - 1];
}

Rational ConstructionSchedule::base_measure(std::size_t j) const {
  return Rational(BigInt(1), base_denominator(j));
}

const std::optional<AlgebraicStageParams>& ConstructionSchedule::algebraic(std::size_t j) const {
  check_stage(j);
  return algebraic_[j - 1];
}

std::optional<std::size_t> ConstructionSchedule::working_stage(const BigInt& reach) const {
  for (std::size_t j = 0; j < heights_.size(); ++j) {
    if (heights_[j] >= reach) return j + 1;
  }
  return std::nullopt;
}

std::uint64_t power_representative(std::uint64_t q, std::uint64_t i, std::uint64_t r) {
  return pow_mod(q, i, r);
}

StageSpec algebraic_spacers(const AlgebraicStageParams& params) {
  params.validate();
  StageSpec st;
  st.r = params.r;
  st.spacers.reserve(params.r);
  std::uint64_t cur = params.q % params.r;
  for (std::uint64_t i = 1; i < params.r; ++i) {
    std::uint64_t next = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(cur) * params.q % params.r);
    st.spacers.push_back(params.H + BigInt(cur) - BigInt(next));
    cur = next;
  }
  st.spacers.push_back(params.s_last);
  return st;
}

BigInt StageRule::evaluate(std::uint64_t r, const BigInt& h) const {
  switch (base) {
    case Base::Zero:
      return add;
    case Base::Cuts:
      return BigInt(r) + add;
    case Base::Height:
      return h + add;
  }
  return add;
}

std::string StageRule::str() const {
  std::string prefix = base == Base::Cuts ? "r" : base == Base::Height ? "h" : "";
  if (prefix.empty()) return to_string(add);
  if (add == 0) return prefix;
  return prefix + (add > 0 ? "+" : "") + to_string(add);
}

StageRule StageRule::parse(std::string_view text) {
  StageRule rule;
  if (!text.empty() && (text[0] == 'r' || text[0] == 'h')) {
    rule.base = text[0] == 'r' ? Base::Cuts : Base::Height;
    text.remove_prefix(1);
    if (text.empty()) return rule;
    if (text[0] != '+' && text[0] != '-')
      throw InvalidArgument("malformed stage rule; expected e.g. 'r', 'r+2', 'h' or '7'");
  }
  rule.add = parse_bigint(text);
  return rule;
}

ConstructionSchedule algebraic_schedule(const BigInt& h1, std::span<const std::uint64_t> primes,
                                        const StageRule& H_rule, const StageRule& s_last_rule) {
  std::vector<StageSpec> stages;
  std::vector<std::optional<AlgebraicStageParams>> algebraic;
  ScheduleMeta meta;
  meta.family = "algebraic";
  auto& p = meta.params;
  p["primes"] = nlohmann::ordered_json::array();
  p["H_rule"] = H_rule.str();
  p["s_last_rule"] = s_last_rule.str();
  p["q"] = nlohmann::ordered_json::array();
  p["H"] = nlohmann::ordered_json::array();
  p["s_last"] = nlohmann::ordered_json::array();
  BigInt h = h1;
  for (std::uint64_t r : primes) {
    AlgebraicStageParams a;
    a.r = r;
    a.q = find_primitive_root(r);
    a.H = H_rule.evaluate(r, h);
    a.s_last = s_last_rule.evaluate(r, h);
    StageSpec st = algebraic_spacers(a);
    p["primes"].push_back(r);
    p["q"].push_back(a.q);
    p["H"].push_back(to_string(a.H));
    p["s_last"].push_back(to_string(a.s_last));
    h = derive_heights(h, std::span(&st, 1)).back();
    stages.push_back(std::move(st));
    algebraic.emplace_back(std::move(a));
  }
  return ConstructionSchedule(h1, std::move(stages), std::move(meta), std::move(algebraic));
}

StageSpec sidon_growth_stage(const BigInt& h, std::uint64_t r, std::uint64_t growth_factor) {
  if (r < 2) throw InvalidArgument("cut must be >= 2");
  if (growth_factor < 2) throw InvalidArgument("growth_factor must be >= 2");
  StageSpec st;
  st.r = r;
  st.spacers.reserve(r);
  BigInt s = BigInt(growth_factor) * (h + 1);
  st.spacers.push_back(s);
  for (std::uint64_t i = 1; i < r; ++i) {
    s = BigInt(growth_factor) * (s + h + 1);
    st.spacers.push_back(s);
  }
  return st;
}

ConstructionSchedule sidon_growth_schedule(const BigInt& h1, std::span<const std::uint64_t> cuts,
                                           std::uint64_t growth_factor) {
  if (h1 < 0) throw InvalidArgument("h1 must be non-negative");
  ScheduleMeta meta;
  meta.family = "sidon";
  meta.params["cuts"] = nlohmann::ordered_json::array();
  meta.params["growth_factor"] = growth_factor;
  std::vector<StageSpec> stages;
  BigInt h = h1;
  for (std::uint64_t r : cuts) {
    StageSpec st = sidon_growth_stage(h, r, growth_factor);
    h = derive_heights(h, std::span(&st, 1)).back();
    meta.params["cuts"].push_back(r);
    stages.push_back(std::move(st));
  }
  return ConstructionSchedule(h1, std::move(stages), std::move(meta));
}

namespace {

// 2pk + (k^2 mod p) for k = 0..r-1, p the smallest prime >= r.
std::vector<BigInt> erdos_turan_set(std::uint64_t r) {
  std::uint64_t p = next_prime(r);
  std::vector<BigInt> b;
  b.reserve(r);
  for (std::uint64_t k = 0; k < r; ++k) {
    b.push_back(BigInt(2 * p) * k + BigInt((k % p) * (k % p) % p));
  }
  return b;
}

}  // namespace

StageSpec sidon_set_stage(const BigInt& h, std::uint64_t r) {
  if (r < 2) throw InvalidArgument("cut must be >= 2");
  const std::vector<BigInt> b = erdos_turan_set(r);
  const BigInt scale = 2 * h + 1;
  StageSpec st;
  st.r = r;
  st.spacers.reserve(r);
  for (std::uint64_t c = 1; c < r; ++c) st.spacers.push_back(scale * (b[c] - b[c - 1]) - h - 1);
  st.spacers.push_back(h);
  return st;
}

std::string_view to_string(DecaySpacing spacing) {
  return spacing == DecaySpacing::Growth ? "growth" : "sidon_set";
}

DecaySpacing parse_decay_spacing(std::string_view name) {
  if (name == "growth") return DecaySpacing::Growth;
  if (name == "sidon_set" || name == "sidon-set") return DecaySpacing::SidonSet;
  throw InvalidArgument("unknown spacing '" + std::string(name) + "' (expected growth or sidon_set)");
}

ThresholdUnreachable::ThresholdUnreachable(std::size_t stage, std::uint64_t cap, Enclosure attained,
                                           Enclosure required)
    : Error("decay stage " + std::to_string(stage) + ": no cutting number r <= " +
            std::to_string(cap) + " reaches psi(h_next) >= sqrt(h); best psi(h_next) <= " +
            format_double(attained.hi) + ", required sqrt(h) >= " + format_double(required.lo)),
      stage_(stage),
      cap_(cap),
      attained_(attained),
      required_(required) {}

namespace {

// Heights h_{j+1}(r) for r = 2, 3, ... without materializing each stage.
class CandidateHeights {
 public:
  CandidateHeights(const BigInt& h, const DecayOptions& options)
      : h_(h), options_(options), spacer_(BigInt(options.growth_factor) * (h + 1)),
        spacer_sum_(spacer_) {}

  std::uint64_t r() const { return r_; }

  BigInt advance() {
    ++r_;
    if (options_.spacing == DecaySpacing::Growth) {
      spacer_ = BigInt(options_.growth_factor) * (spacer_ + h_ + 1);
      spacer_sum_ += spacer_;
      return (h_ + 1) * r_ + spacer_sum_ - 1;
    }
    const std::uint64_t p = next_prime(r_);
    const std::uint64_t k = r_ - 1;
    BigInt last = BigInt(2 * p) * k + BigInt(k % p * (k % p) % p);
    return (2 * h_ + 1) * last + 2 * h_;
  }

 private:
  const BigInt& h_;
  const DecayOptions& options_;
  BigInt spacer_;
  BigInt spacer_sum_;
  std::uint64_t r_ = 1;
};

}  // namespace

ConstructionSchedule decay_rate_schedule(const BigInt& h1, SlowFunction psi, const Rational& C_hint,
                                         std::size_t max_stages, const DecayOptions& options) {
  if (h1 < 2) throw InvalidArgument("decay schedules need h1 >= 2");
  if (max_stages < 1) throw InvalidArgument("max_stages must be >= 1");
  if (C_hint <= 0) throw InvalidArgument("C_hint must be positive");
  if (options.r_cap < 2) throw InvalidArgument("r_cap must be >= 2");

  ScheduleMeta meta;
  meta.family = "decay";
  meta.params["psi"] = std::string(to_string(psi));
  meta.params["C"] = to_string(C_hint);
  meta.params["spacing"] = std::string(to_string(options.spacing));
  meta.params["growth_factor"] = options.growth_factor;
  meta.params["r_cap"] = options.r_cap;
  meta.params["certificates"] = nlohmann::ordered_json::array();

  std::vector<StageSpec> stages;
  BigInt h = h1;
  for (std::size_t j = 1; j <= max_stages; ++j) {
    CandidateHeights candidates(h, options);
    std::optional<std::uint64_t> chosen;
    BigInt h_next;
    while (candidates.r() < options.r_cap) {
      h_next = candidates.advance();
      if (psi_dominates_sqrt(psi, h_next, h) == Certainty::Yes) {
        chosen = candidates.r();
        break;
      }
    }
    if (!chosen) {
      throw ThresholdUnreachable(j, options.r_cap, psi_enclosure(psi, h_next),
                                 sqrt_enclosure(h));
    }
    StageSpec st = options.spacing == DecaySpacing::Growth
                       ? sidon_growth_stage(h, *chosen, options.growth_factor)
                       : sidon_set_stage(h, *chosen);
    BigInt built = derive_heights(h, std::span(&st, 1)).back();
    if (built != h_next) throw Error("decay schedule: height bookkeeping mismatch");
    Enclosure pn = psi_enclosure(psi, h_next);
    Enclosure sh = sqrt_enclosure(h);
    meta.params["certificates"].push_back({{"stage", j},
                                           {"r", *chosen},
                                           {"h", to_string(h)},
                                           {"h_next", to_string(h_next)},
                                           {"psi_next_lo", format_double(pn.lo)},
                                           {"psi_next_hi", format_double(pn.hi)},
                                           {"sqrt_h_lo", format_double(sh.lo)},
                                           {"sqrt_h_hi", format_double(sh.hi)}});
    stages.push_back(std::move(st));
    h = h_next;
  }
  return ConstructionSchedule(h1, std::move(stages), std::move(meta));
}

std::vector<DecayCertificate> decay_certificates(const ConstructionSchedule& schedule) {
  std::vector<DecayCertificate> out;
  const auto& params = schedule.meta().params;
  if (!params.contains("certificates")) return out;
  for (const auto& c : params["certificates"]) {
    DecayCertificate cert;
    cert.stage = c.at("stage").get<std::size_t>();
    cert.r = c.at("r").get<std::uint64_t>();
    cert.h = parse_bigint(c.at("h").get<std::string>());
    cert.h_next = parse_bigint(c.at("h_next").get<std::string>());
    cert.psi_next = {std::stod(c.at("psi_next_lo").get<std::string>()),
                     std::stod(c.at("psi_next_hi").get<std::string>())};
    cert.sqrt_h = {std::stod(c.at("sqrt_h_lo").get<std::string>()),
                   std::stod(c.at("sqrt_h_hi").get<std::string>())};
    out.push_back(cert);
  }
  return out;
}

}  // namespace rank1
