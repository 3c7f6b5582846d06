#include "rank1/verify.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rank1 {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

Witness& Witness::add(std::string name, std::string value) {
  fields.emplace_back(std::move(name), std::move(value));
  return *this;
}
Witness& Witness::add(std::string name, const BigInt& value) {
  return add(std::move(name), to_string(value));
}
Witness& Witness::add(std::string name, const Rational& value) {
  return add(std::move(name), to_string(value));
}
Witness& Witness::add(std::string name, std::uint64_t value) {
  return add(std::move(name), std::to_string(value));
}

const std::string& Witness::at(std::string_view name) const {
  for (const auto& [k, v] : fields)
    if (k == name) return v;
  throw std::out_of_range("witness has no field " + std::string(name));
}

void VerificationReport::count(std::string_view name, std::uint64_t n) {
  for (auto& [k, v] : stats) {
    if (k == name) {
      v += n;
      return;
    }
  }
  stats.emplace_back(std::string(name), n);
}

std::uint64_t VerificationReport::stat(std::string_view name) const {
  for (const auto& [k, v] : stats)
    if (k == name) return v;
  return 0;
}

void VerificationReport::fail(Witness w) {
  verdict = Verdict::Fail;
  count("violations");
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
}

void VerificationReport::undecided(Witness w) {
  if (verdict == Verdict::Pass) verdict = Verdict::Indeterminate;
  count("indeterminate");
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
}

Verdict combine(const std::vector<VerificationReport>& reports) {
  Verdict out = Verdict::Pass;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Fail) return Verdict::Fail;
    if (r.verdict == Verdict::Indeterminate) out = Verdict::Indeterminate;
  }
  return out;
}

namespace {

VerificationReport make_report(std::string property, std::size_t j) {
  VerificationReport rep;
  rep.property = std::move(property);
  rep.stage_from = rep.stage_to = j;
  rep.count("checks", 0);
  return rep;
}

const BigInt& algebraic_H(const ConstructionSchedule& schedule, std::size_t j) {
  const auto& alg = schedule.algebraic(j);
  if (!alg) throw InvalidArgument("stage " + std::to_string(j) + " has no algebraic parameters");
  return alg->H;
}

}  // namespace

VerificationReport verify_ornstein(const StageSpec& stage, const BigInt& H, std::size_t j) {
  VerificationReport rep = make_report("ornstein", j);
  const BigInt r(stage.r);
  for (std::uint64_t n = 0; n < stage.r; ++n) {
    const auto drifts = spacer_drifts(stage, H, n);
    for (std::size_t k = 0; k < drifts.size(); ++k) {
      rep.count("checks");
      if (drifts[k] < -r || drifts[k] > r)
        rep.fail(Witness{}
                     .add("j", std::uint64_t{j})
                     .add("i", std::uint64_t{k + 1})
                     .add("n", n)
                     .add("S", drifts[k])
                     .add("r", r));
    }
  }
  return rep;
}

VerificationReport verify_ornstein(const ConstructionSchedule& schedule, std::size_t j) {
  return verify_ornstein(schedule.stage(j), algebraic_H(schedule, j), j);
}

VerificationReport verify_injectivity(const StageSpec& stage, const BigInt& H, std::size_t j) {
  VerificationReport rep = make_report("injectivity", j);
  // n = 0 is the empty sum, identically zero; the property concerns n >= 1
  for (std::uint64_t n = 1; n < stage.r; ++n) {
    const auto drifts = spacer_drifts(stage, H, n);
    std::vector<std::pair<BigInt, std::uint64_t>> keyed;
    for (std::size_t k = 0; k < drifts.size(); ++k) keyed.emplace_back(drifts[k], k + 1);
    std::sort(keyed.begin(), keyed.end());
    rep.count("checks");
    for (std::size_t k = 1; k < keyed.size(); ++k) {
      if (keyed[k].first == keyed[k - 1].first)
        rep.fail(Witness{}
                     .add("j", std::uint64_t{j})
                     .add("n", n)
                     .add("i", keyed[k - 1].second)
                     .add("i_prime", keyed[k].second)
                     .add("S", keyed[k].first));
    }
  }
  return rep;
}

VerificationReport verify_injectivity(const ConstructionSchedule& schedule, std::size_t j) {
  return verify_injectivity(schedule.stage(j), algebraic_H(schedule, j), j);
}

std::uint64_t aligned_column_pairs(const ConstructionSchedule& schedule, std::size_t j,
                                   const BigInt& m) {
  const auto& offs = schedule.offsets(j);
  const BigInt& h = schedule.height(j);
  std::uint64_t count = 0;
  for (const BigInt& oc : offs) {
    for (const BigInt& oc2 : offs) {
      const BigInt gap = oc2 - oc - m;
      if (gap >= -h && gap <= h) ++count;
    }
  }
  return count;
}

namespace {

Witness sidon_witness(const ConstructionSchedule& schedule, std::size_t j, const BigInt& m,
                      std::uint64_t pairs) {
  Witness w;
  w.add("j", std::uint64_t{j}).add("m", m).add("aligned_pairs", pairs);
  const auto& offs = schedule.offsets(j);
  const BigInt& h = schedule.height(j);
  int listed = 0;
  for (std::size_t c = 0; c < offs.size() && listed < 2; ++c) {
    for (std::size_t c2 = 0; c2 < offs.size() && listed < 2; ++c2) {
      const BigInt gap = offs[c2] - offs[c] - m;
      if (gap >= -h && gap <= h) {
        ++listed;
        w.add("pair" + std::to_string(listed),
              "(" + std::to_string(c + 1) + "," + std::to_string(c2 + 1) + ")");
      }
    }
  }
  return w;
}

}  // namespace

VerificationReport verify_sidon(const ConstructionSchedule& schedule, std::size_t j,
                                std::uint64_t budget) {
  VerificationReport rep = make_report("sidon", j);
  schedule.stage(j);  // throws unless tower j+1 exists
  const BigInt& h = schedule.height(j);
  const BigInt lo = h + 1;
  const BigInt hi = schedule.height(j + 1);
  const auto& offs = schedule.offsets(j);

  // A pair (c, c') is aligned by m exactly when D = o(c') - o(c) lies in
  // [m - h, m + h]. For m > h only D > 0 can qualify.
  std::vector<BigInt> diffs;
  for (std::size_t c = 0; c < offs.size(); ++c)
    for (std::size_t c2 = c + 1; c2 < offs.size(); ++c2) diffs.push_back(offs[c2] - offs[c]);
  std::sort(diffs.begin(), diffs.end());

  auto check = [&](const BigInt& m, std::uint64_t pairs) {
    rep.count("checks");
    if (pairs > 1) rep.fail(sidon_witness(schedule, j, m, pairs));
  };

  const BigInt size = hi - lo + 1;
  if (size <= budget) {
    rep.count("exhaustive");
    // sliding window [m - h, m + h] over the sorted differences
    std::size_t left = 0, right = 0;
    for (BigInt m = lo; m <= hi; ++m) {
      while (right < diffs.size() && diffs[right] <= m + h) ++right;
      while (left < diffs.size() && diffs[left] < m - h) ++left;
      check(m, right > left ? right - left : 0);
    }
    return rep;
  }

  rep.count("critical_points");
  std::set<BigInt> points;
  for (const BigInt& d : diffs) {
    const BigInt start = std::max(BigInt(d - h), lo);
    if (start <= hi) points.insert(start);
    if (d >= lo && d <= hi) points.insert(d);
  }
  points.insert(lo);
  points.insert(hi);
  if (budget > 1)
    for (std::uint64_t t = 0; t < budget; ++t) points.insert(lo + (size - 1) * t / (budget - 1));
  for (const BigInt& m : points) {
    const auto first = std::lower_bound(diffs.begin(), diffs.end(), BigInt(m - h));
    const auto last = std::upper_bound(diffs.begin(), diffs.end(), BigInt(m + h));
    check(m, static_cast<std::uint64_t>(last - first));
  }
  return rep;
}

std::vector<BigInt> decay_sample_shifts(const ConstructionSchedule& schedule, std::size_t j0,
                                        std::size_t random_per_stage, Rng& rng) {
  std::set<BigInt> out;
  for (std::size_t j = j0; j + 2 <= schedule.tower_count(); ++j) {
    const BigInt lo = schedule.height(j) + 1;
    const BigInt& hi = schedule.height(j + 1);
    const auto& offs = schedule.offsets(j);
    for (std::size_t c = 0; c < offs.size(); ++c)
      for (std::size_t c2 = c + 1; c2 < offs.size(); ++c2) {
        const BigInt d = offs[c2] - offs[c];
        if (d >= lo && d <= hi) out.insert(d);
      }
    for (std::size_t t = 0; t < random_per_stage; ++t) out.insert(rng.between(lo, hi));
  }
  return {out.begin(), out.end()};
}

Rational fit_decay_constant(const ConstructionSchedule& schedule, const LevelSet& A,
                            SlowFunction psi, const std::vector<BigInt>& shifts,
                            const Limits& limits) {
  CorrelationEngine engine(schedule, A, A, limits);
  Rational C = 0;
  for (const BigInt& m : shifts) {
    const CorrelationResult c = engine.bracket(m);
    if (c.upper > 0) C = std::max(C, decay_constant_upper(c.upper, psi, m));
  }
  return C;
}

Rational chain_decay_constant(const ConstructionSchedule& schedule, const LevelSet& A) {
  const Rational mu = measure(schedule, A);
  Rational C = 0;
  for (std::size_t j = A.stage; j + 2 <= schedule.tower_count(); ++j) {
    const Rational ratio(schedule.height(j + 1), schedule.height(j));
    C = std::max(C, Rational(mu * sqrt_upper(ratio) / schedule.cuts(j)));
  }
  return C;
}

VerificationReport verify_decay(const ConstructionSchedule& schedule, const LevelSet& A,
                                SlowFunction psi, const Rational& C,
                                const std::vector<BigInt>& m_samples, const Limits& limits) {
  if (C <= 0) throw InvalidArgument("decay constant must be positive");
  VerificationReport rep = make_report("decay", A.stage);
  CorrelationEngine engine(schedule, A, A, limits);
  for (const BigInt& m : m_samples) {
    if (m <= schedule.height(A.stage))
      throw InvalidArgument("decay sample m = " + to_string(m) + " is not above h_j0");
    std::size_t j = A.stage;
    while (j + 1 <= schedule.tower_count() && schedule.height(j + 1) < m) ++j;
    if (j + 1 > schedule.tower_count())
      throw InvalidArgument("decay sample m = " + to_string(m) + " is beyond the last tower");
    rep.stage_to = std::max(rep.stage_to, j);

    const CorrelationResult c = engine.bracket(m);
    rep.count("checks");
    auto witness = [&](std::string what) {
      return Witness{}
          .add("check", std::move(what))
          .add("j", std::uint64_t{j})
          .add("m", m)
          .add("lower", c.lower)
          .add("upper", c.upper)
          .add("C", C)
          .add("psi", std::string(to_string(psi)));
    };
    switch (below_decay_rate(c.upper, C, psi, m)) {
      case Certainty::Yes: break;
      case Certainty::No:
        if (below_decay_rate(c.lower, C, psi, m) == Certainty::No)
          rep.fail(witness("rate"));
        else
          rep.undecided(witness("rate"));
        break;
      case Certainty::Unknown: rep.undecided(witness("rate")); break;
    }

    rep.count("premise_checks");
    const BigInt& top = schedule.height(j + 1);
    switch (rate_not_increasing(psi, m, top)) {
      case Certainty::Yes: break;
      case Certainty::No: rep.fail(witness("premise").add("h_next", top)); break;
      case Certainty::Unknown: rep.undecided(witness("premise").add("h_next", top)); break;
    }
  }
  return rep;
}

CoefficientEntry JoiningCoefficients::at(const BigInt& k) const {
  auto it = a.find(k);
  return it == a.end() ? CoefficientEntry{} : it->second;
}

namespace {

// Bound on mu(T^shift E_j ∩ (levels [0, top] of tower j)) / mu(E_j).
Rational half_mass_upper(const ConstructionSchedule& schedule, std::size_t j, std::size_t J,
                         const std::vector<BigInt>& positions, const BigInt& shift,
                         const BigInt& top, const Limits& limits) {
  ShiftOptions options;
  options.max_extra_stages = schedule.tower_count() - J;
  options.limits = limits;
  const ShiftResult res = shift_levels(schedule, LevelSet{J, positions}, shift, options);
  std::uint64_t hits = 0;
  for (const BigInt& x : res.resolved.levels) {
    const auto level = locate_level(schedule, res.resolved.stage, x, j);
    if (level && *level <= top) ++hits;
  }
  const Rational mass =
      Rational(BigInt(hits), schedule.base_denominator(res.resolved.stage)) + res.unresolved_mass;
  return mass / schedule.base_measure(j);
}

}  // namespace

JoiningCoefficients joining_coefficients(const ConstructionSchedule& schedule, std::size_t j,
                                         const BigInt& l, const Limits& limits) {
  const BigInt& h = schedule.height(j);
  const BigInt top = schedule.height(schedule.tower_count());
  const BigInt abs_l = l < 0 ? BigInt(-l) : l;
  if (abs_l > top - h)
    throw InvalidArgument("joining_coefficients: |l| must not exceed h_Jmax - h_j = " +
                          to_string(BigInt(top - h)));
  // |d| for d = l - k, |k| <= h_j, fills [dlo, dhi], at most 2 h_j + 1 values
  const BigInt dhi = abs_l + h;
  const BigInt dlo = abs_l > h ? BigInt(abs_l - h) : BigInt(0);
  if (dhi - dlo >= limits.position_cap) throw CapExceeded(dhi - dlo + 1, limits.position_cap);
  const auto width = static_cast<std::size_t>(dhi - dlo) + 1;

  JoiningCoefficients out;
  out.j = j;
  out.l = l;

  // c(d) = mu(T^d E_j ∩ E_j) from pairwise differences of E_j's positions in
  // tower J; a position p with p + d > h_J is unresolved for that d.
  std::size_t J = schedule.working_stage(dhi + h).value_or(schedule.tower_count());
  std::vector<BigInt> positions;
  std::vector<std::uint64_t> pairs, unresolved;
  for (;;) {
    positions = expand_level(schedule, j, 0, J, limits).positions;
    pairs.assign(width, 0);
    unresolved.assign(width, 0);
    for (std::size_t a = 0; a < positions.size(); ++a) {
      auto it = std::lower_bound(positions.begin() + a, positions.end(), BigInt(positions[a] + dlo));
      for (; it != positions.end(); ++it) {
        const BigInt d = *it - positions[a];
        if (d > dhi) break;
        ++pairs[static_cast<std::size_t>(d - dlo)];
      }
    }
    const BigInt& hJ = schedule.height(J);
    bool any = false;
    std::size_t idx = positions.size();
    for (std::size_t k = 0; k < width; ++k) {
      const BigInt d = dlo + k;
      while (idx > 0 && positions[idx - 1] + d > hJ) --idx;
      unresolved[k] = positions.size() - idx;
      any = any || unresolved[k] > 0;
    }
    if (!any || J == schedule.tower_count()) break;
    try {
      expand_level(schedule, j, 0, J + 1, limits);
    } catch (const CapExceeded&) {
      break;
    }
    ++J;
  }
  out.stage_used = J;

  const BigInt count(positions.size());
  Rational upper_sum;
  for (BigInt k = -h; k <= h; ++k) {
    BigInt d = l - k;
    if (d < 0) d = -d;
    const auto di = static_cast<std::size_t>(d - dlo);
    CoefficientEntry e;
    e.lower = Rational(BigInt(pairs[di]), count);
    e.upper = std::min(Rational(BigInt(pairs[di] + unresolved[di]), count), Rational(1));
    out.mass_lower += e.lower;
    upper_sum += e.upper;
    out.exact = out.exact && e.exact();
    if (e.upper != 0) out.a.emplace(k, e);
  }

  // The levels T^k E_j, k in [0, h_j], are disjoint, and so are their images
  // under T^{h_j} for k in [-h_j, -1]. Each half therefore sums to at most 1.
  const std::size_t Jh = schedule.working_stage(BigInt(abs_l + 2 * h)).value_or(schedule.tower_count());
  const auto base = expand_level(schedule, j, 0, Jh, limits).positions;
  const Rational positive = half_mass_upper(schedule, j, Jh, base, l, h, limits);
  const Rational negative = h == 0 ? Rational(0)
                                   : half_mass_upper(schedule, j, Jh, base, BigInt(l + h),
                                                     BigInt(h - 1), limits);
  out.mass_upper = std::min(upper_sum, Rational(positive + negative));
  return out;
}

VerificationReport verify_joining_mass(const ConstructionSchedule& schedule, std::size_t j,
                                       const BigInt& l, const Limits& limits) {
  VerificationReport rep = make_report("joining_mass", j);
  const JoiningCoefficients co = joining_coefficients(schedule, j, l, limits);
  auto witness = [&](std::string what) {
    return Witness{}
        .add("check", std::move(what))
        .add("j", std::uint64_t{j})
        .add("l", l)
        .add("mass_lower", co.mass_lower)
        .add("mass_upper", co.mass_upper);
  };
  rep.count("coefficients", co.a.size());
  rep.count("checks");
  if (co.mass_lower > co.mass_upper) rep.fail(witness("bracket"));
  rep.count("checks");
  if (co.mass_upper > 2) {
    if (co.mass_lower > 2)
      rep.fail(witness("mass"));
    else
      rep.undecided(witness("mass"));
  }
  if (l == 0) {
    rep.count("checks");
    const CoefficientEntry zero = co.at(0);
    if (zero.lower != 1 || zero.upper != 1) rep.fail(witness("diagonal").add("a0", zero.upper));
    for (const auto& [k, e] : co.a) {
      if (k == 0) continue;
      rep.fail(witness("diagonal").add("k", k).add("a_upper", e.upper));
    }
  }
  return rep;
}

std::map<BigInt, std::uint64_t> block_counts(const LevelSet& A, const LevelSet& B) {
  std::map<BigInt, std::uint64_t> out;
  for (const BigInt& i : A.levels)
    for (const BigInt& i2 : B.levels) ++out[i2 - i];
  return out;
}

VerificationReport verify_lemma_decomposition(const ConstructionSchedule& schedule, std::size_t j,
                                              const BigInt& l, const LevelSet& A,
                                              const LevelSet& B, const Limits& limits) {
  if (A.stage != j || B.stage != j)
    throw InvalidArgument("lemma decomposition: A and B must be level sets of tower " +
                          std::to_string(j));
  VerificationReport rep = make_report("lemma_decomposition", j);
  CorrelationEngine engine(schedule, A, B, limits);
  const CorrelationResult lhs = engine.bracket(l);
  const JoiningCoefficients co = joining_coefficients(schedule, j, l, limits);

  Rational rhs_lower, rhs_upper;
  bool rhs_exact = true;
  for (const auto& [k, n] : block_counts(A, B)) {
    const CoefficientEntry e = co.at(k);
    rhs_lower += e.lower * n;
    rhs_upper += e.upper * n;
    rhs_exact = rhs_exact && e.exact();
  }
  const Rational& mu = schedule.base_measure(j);
  rhs_lower *= mu;
  rhs_upper *= mu;

  rep.count("checks");
  auto witness = [&] {
    return Witness{}
        .add("j", std::uint64_t{j})
        .add("l", l)
        .add("lhs_lower", lhs.lower)
        .add("lhs_upper", lhs.upper)
        .add("rhs_lower", rhs_lower)
        .add("rhs_upper", rhs_upper);
  };
  if (lhs.upper < rhs_lower || rhs_upper < lhs.lower) {
    rep.fail(witness());
  } else if (!lhs.exact() || !rhs_exact) {
    rep.undecided(witness());
  } else {
    rep.count("exact");
  }
  return rep;
}

VerificationReport verify_lemma_trials(const ConstructionSchedule& schedule, std::size_t j,
                                       std::size_t trials, Rng& rng, const Limits& limits) {
  VerificationReport rep = make_report("lemma_decomposition", j);
  const BigInt& h = schedule.height(j);
  BigInt reach = schedule.height(schedule.tower_count()) - h - 1;
  if (j < schedule.tower_count()) reach = std::min(reach, BigInt(schedule.height(j + 1) + h));
  if (reach < 0) throw InvalidArgument("tower " + std::to_string(j) + " is the last tower");
  auto draw = [&] {
    const std::uint64_t size = 1 + rng.below(std::uint64_t{8});
    std::vector<BigInt> xs;
    for (std::uint64_t k = 0; k < size; ++k) xs.push_back(rng.between(BigInt(0), h));
    return LevelSet::make(schedule, j, std::move(xs));
  };
  for (std::size_t t = 0; t < trials; ++t) {
    const LevelSet A = draw();
    const LevelSet B = draw();
    const BigInt l = rng.between(BigInt(-reach), reach);
    const VerificationReport one = verify_lemma_decomposition(schedule, j, l, A, B, limits);
    rep.count("checks");
    if (one.verdict == Verdict::Pass) rep.count("exact");
    for (const Witness& w : one.witnesses) {
      Witness full = w;
      std::string a, b;
      for (const BigInt& x : A.levels) a += (a.empty() ? "" : ",") + to_string(x);
      for (const BigInt& x : B.levels) b += (b.empty() ? "" : ",") + to_string(x);
      full.add("A", a).add("B", b);
      if (one.verdict == Verdict::Fail)
        rep.fail(std::move(full));
      else
        rep.undecided(std::move(full));
    }
  }
  return rep;
}

}  // namespace rank1
