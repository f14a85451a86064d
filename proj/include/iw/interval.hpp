#pragma once

#include "iw/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

namespace iw {

// Owning wrapper over mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 256) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept : BigFloat(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  Rational exact() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
  }

  std::string str(int digits, mpfr_rnd_t rnd) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, rnd == MPFR_RNDD ? "%.*RDg" : "%.*RUg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

 private:
  mpfr_t v_;
};

// Closed enclosure [lo, hi] of a nonnegative real, outward rounded.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 256) : lo_(prec), hi_(prec) {}

  static Interval of(const Rational& q, mpfr_prec_t prec = 256) {
    Interval r(prec);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    r.point_ = q;
    return r;
  }

  // The enclosed number itself when it is known to be this rational.
  const std::optional<Rational>& point() const { return point_; }

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  BigFloat& lo() {
    point_.reset();
    return lo_;
  }
  BigFloat& hi() {
    point_.reset();
    return hi_;
  }
  mpfr_prec_t prec() const { return lo_.prec(); }

  Interval operator+(const Interval& o) const {
    Interval r(prec());
    mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return r;
  }

  Interval& operator+=(const Interval& o) { return *this = *this + o; }

  Interval operator*(const Interval& o) const {
    Interval r(prec());
    mpfr_mul(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_mul(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return r;
  }

  Interval divided_by(const BigInt& w) const {
    Interval r(prec());
    mpfr_div_z(r.lo_.get(), lo_.get(), w.get_mpz_t(), MPFR_RNDD);
    mpfr_div_z(r.hi_.get(), hi_.get(), w.get_mpz_t(), MPFR_RNDU);
    return r;
  }

  // x^(a/b) for p = a/b > 0; monotone so endpoints map to endpoints.
  Interval pow(const Rational& p) const {
    Rational c = p;
    c.canonicalize();
    if (c <= 0 || !c.get_num().fits_ulong_p() || !c.get_den().fits_ulong_p())
      throw std::invalid_argument("interval power needs a small positive rational exponent");
    unsigned long a = c.get_num().get_ui(), b = c.get_den().get_ui();
    Interval r(prec());
    apply_pow(r.lo_, lo_, a, b, MPFR_RNDD);
    apply_pow(r.hi_, hi_, a, b, MPFR_RNDU);
    return r;
  }

  Interval root(const Rational& p) const {
    Rational inv = 1 / p;
    return pow(inv);
  }

  // Enclosure of max over alternatives.
  static Interval max(const Interval& a, const Interval& b) {
    Interval r(a.prec());
    mpfr_max(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }

  Rational width() const { return point_ ? Rational(0) : Rational(hi_.exact() - lo_.exact()); }
  bool certainly_le(const Rational& q) const { return point_ ? *point_ <= q : hi_.exact() <= q; }
  bool certainly_gt(const Rational& q) const { return point_ ? *point_ > q : lo_.exact() > q; }
  bool contains(const Rational& q) const { return point_ ? *point_ == q : lo_.exact() <= q && q <= hi_.exact(); }

  std::string str(int digits = 12) const {
    return "[" + lo_.str(digits, MPFR_RNDD) + ", " + hi_.str(digits, MPFR_RNDU) + "]";
  }

 private:
  static void apply_pow(BigFloat& out, const BigFloat& in, unsigned long a, unsigned long b, mpfr_rnd_t rnd) {
    BigFloat t(in.prec() + 32);
    mpfr_pow_ui(t.get(), in.get(), a, rnd);
    if (b == 1)
      mpfr_set(out.get(), t.get(), rnd);
    else
      mpfr_rootn_ui(out.get(), t.get(), b, rnd);
  }

  BigFloat lo_, hi_;
  std::optional<Rational> point_;
};

}  // namespace iw
