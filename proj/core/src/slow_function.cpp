#include "rank1/slow_function.hpp"

#include <mpfr.h>

#include <array>
#include <utility>

namespace rank1 {

namespace {

class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// Closed interval [lo, hi] with outward rounding at a fixed precision.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec) : prec_(prec), lo_(prec), hi_(prec) {}

  static Interval of(const BigInt& m, mpfr_prec_t prec) {
    Interval out(prec);
    mpfr_set_z(out.lo(), m.backend().data(), MPFR_RNDD);
    mpfr_set_z(out.hi(), m.backend().data(), MPFR_RNDU);
    return out;
  }

  Interval log() const {
    Interval out(prec_);
    mpfr_log(out.lo(), lo(), MPFR_RNDD);
    mpfr_log(out.hi(), hi(), MPFR_RNDU);
    return out;
  }

  Interval sqrt() const {
    Interval out(prec_);
    mpfr_sqrt(out.lo(), lo(), MPFR_RNDD);
    mpfr_sqrt(out.hi(), hi(), MPFR_RNDU);
    return out;
  }

  // Divisor must be strictly positive.
  Interval divided_by(const Interval& d) const {
    Interval out(prec_);
    mpfr_div(out.lo(), lo(), mpfr_sgn(lo()) >= 0 ? d.hi() : d.lo(), MPFR_RNDD);
    mpfr_div(out.hi(), hi(), mpfr_sgn(hi()) >= 0 ? d.lo() : d.hi(), MPFR_RNDU);
    return out;
  }

  // c > 0.
  Interval scaled(const Rational& c) const {
    Interval out(prec_);
    mpfr_mul_q(out.lo(), lo(), c.backend().data(), MPFR_RNDD);
    mpfr_mul_q(out.hi(), hi(), c.backend().data(), MPFR_RNDU);
    return out;
  }

  mpfr_ptr lo() { return lo_.get(); }
  mpfr_ptr hi() { return hi_.get(); }
  mpfr_srcptr lo() const { return lo_.get(); }
  mpfr_srcptr hi() const { return hi_.get(); }

  Interval(Interval&& other) noexcept : prec_(other.prec_), lo_(other.prec_), hi_(other.prec_) {
    mpfr_swap(lo_.get(), other.lo_.get());
    mpfr_swap(hi_.get(), other.hi_.get());
  }

 private:
  mpfr_prec_t prec_;
  Real lo_;
  Real hi_;
};

constexpr std::array<mpfr_prec_t, 4> kPrecisions{64, 256, 1024, 4096};

Interval evaluate(SlowFunction psi, const BigInt& m, mpfr_prec_t prec) {
  Interval x = Interval::of(m, prec);
  switch (psi) {
    case SlowFunction::LnLn:
      return x.log().log();
    case SlowFunction::Ln:
      return x.log();
    case SlowFunction::Sqrt:
      return x.sqrt();
  }
  throw InvalidArgument("unknown slow function");
}

// ψ(m)/√m
Interval rate(SlowFunction psi, const BigInt& m, mpfr_prec_t prec) {
  return evaluate(psi, m, prec).divided_by(Interval::of(m, prec).sqrt());
}

// Certified a >= b given enclosures.
Certainty compare_ge(const Interval& a, const Interval& b) {
  if (mpfr_cmp(a.lo(), b.hi()) >= 0) return Certainty::Yes;
  if (mpfr_cmp(a.hi(), b.lo()) < 0) return Certainty::No;
  return Certainty::Unknown;
}

template <typename Fn>
Certainty refine(Fn&& attempt) {
  for (mpfr_prec_t prec : kPrecisions) {
    Certainty c = attempt(prec);
    if (c != Certainty::Unknown) return c;
  }
  return Certainty::Unknown;
}

void require_argument(const BigInt& m) {
  if (m < 2) throw InvalidArgument("slow function argument must be >= 2, got " + to_string(m));
}

}  // namespace

std::string_view to_string(SlowFunction psi) {
  switch (psi) {
    case SlowFunction::LnLn:
      return "lnln";
    case SlowFunction::Ln:
      return "ln";
    case SlowFunction::Sqrt:
      return "sqrt";
  }
  return "?";
}

SlowFunction parse_slow_function(std::string_view name) {
  if (name == "lnln" || name == "loglog") return SlowFunction::LnLn;
  if (name == "ln" || name == "log") return SlowFunction::Ln;
  if (name == "sqrt") return SlowFunction::Sqrt;
  throw InvalidArgument("unknown slow function '" + std::string(name) +
                        "' (expected lnln, ln or sqrt)");
}

Enclosure psi_enclosure(SlowFunction psi, const BigInt& m) {
  require_argument(m);
  Interval v = evaluate(psi, m, 128);
  return {mpfr_get_d(v.lo(), MPFR_RNDD), mpfr_get_d(v.hi(), MPFR_RNDU)};
}

Enclosure sqrt_enclosure(const BigInt& h) {
  Interval v = Interval::of(h, 128).sqrt();
  return {mpfr_get_d(v.lo(), MPFR_RNDD), mpfr_get_d(v.hi(), MPFR_RNDU)};
}

Certainty psi_dominates_sqrt(SlowFunction psi, const BigInt& m, const BigInt& h) {
  require_argument(m);
  if (psi == SlowFunction::Sqrt) return m >= h ? Certainty::Yes : Certainty::No;
  return refine([&](mpfr_prec_t prec) {
    return compare_ge(evaluate(psi, m, prec), Interval::of(h, prec).sqrt());
  });
}

Certainty below_decay_rate(const Rational& value, const Rational& C, SlowFunction psi,
                           const BigInt& m) {
  require_argument(m);
  if (C <= 0) throw InvalidArgument("decay constant must be positive");
  if (psi == SlowFunction::Sqrt) return value <= C ? Certainty::Yes : Certainty::No;
  return refine([&](mpfr_prec_t prec) {
    Interval rhs = rate(psi, m, prec).scaled(C);
    if (mpfr_cmp_q(rhs.lo(), value.backend().data()) >= 0) return Certainty::Yes;
    if (mpfr_cmp_q(rhs.hi(), value.backend().data()) < 0) return Certainty::No;
    return Certainty::Unknown;
  });
}

Certainty rate_not_increasing(SlowFunction psi, const BigInt& m, const BigInt& upper) {
  require_argument(m);
  if (m == upper || psi == SlowFunction::Sqrt) return Certainty::Yes;
  return refine([&](mpfr_prec_t prec) {
    return compare_ge(rate(psi, m, prec), rate(psi, upper, prec));
  });
}

Rational decay_constant_upper(const Rational& value, SlowFunction psi, const BigInt& m) {
  require_argument(m);
  if (value <= 0) return Rational(0);
  if (psi == SlowFunction::Sqrt) return value;
  constexpr mpfr_prec_t prec = 128;
  Interval p = evaluate(psi, m, prec);
  if (mpfr_sgn(p.lo()) <= 0)
    throw InvalidArgument("psi(" + to_string(m) + ") is not certified positive");
  Interval ratio = Interval::of(m, prec).sqrt().divided_by(p).scaled(value);
  Rational out;
  mpfr_get_q(out.backend().data(), ratio.hi());
  return out;
}

Rational sqrt_upper(const Rational& x) {
  if (x < 0) throw InvalidArgument("sqrt_upper: negative argument");
  Real v(128);
  mpfr_set_q(v.get(), x.backend().data(), MPFR_RNDU);
  mpfr_sqrt(v.get(), v.get(), MPFR_RNDU);
  Rational out;
  mpfr_get_q(out.backend().data(), v.get());
  return out;
}

Rational decay_rate_lower(const Rational& C, SlowFunction psi, const BigInt& m) {
  require_argument(m);
  if (C <= 0) throw InvalidArgument("decay constant must be positive");
  if (psi == SlowFunction::Sqrt) return C;
  Interval rhs = rate(psi, m, 128).scaled(C);
  Rational out;
  mpfr_get_q(out.backend().data(), rhs.lo());
  return out;
}

}  // namespace rank1
