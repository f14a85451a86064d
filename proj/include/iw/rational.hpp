#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace iw {

using BigInt = mpz_class;
using Rational = mpq_class;

// Text form used everywhere in JSON: "num/den", always with an explicit
// denominator so that columns stay uniform.
inline std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (s.find('.') != std::string::npos) {
        // decimal literal, read exactly
        auto dot = s.find('.');
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        BigInt num(digits, 10);
        BigInt den = 1;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(s.size() - dot - 1));
        Rational r(num, den);
        r.canonicalize();
        return r;
      }
      return Rational(BigInt(s, 10));
    }
    BigInt num(s.substr(0, slash), 10);
    BigInt den(s.substr(slash + 1), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument& e) {
    if (std::string_view(e.what()).starts_with("zero")) throw;
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

inline BigInt parse_bigint(std::string_view text) {
  try {
    return BigInt(std::string(text), 10);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
  }
}

inline BigInt pow2(std::uint64_t e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

// Returns e when z == 2^e, otherwise -1.
inline long exact_log2(const BigInt& z) {
  if (z <= 0) return -1;
  auto bits = mpz_sizeinbase(z.get_mpz_t(), 2);
  if (mpz_scan1(z.get_mpz_t(), 0) != bits - 1) return -1;
  return static_cast<long>(bits - 1);
}

inline bool fits_u64(const BigInt& z) {
  return z >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& z) {
  if (!fits_u64(z)) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
  std::uint64_t lo = mpz_getlimbn(z.get_mpz_t(), 0);
  if constexpr (sizeof(mp_limb_t) < 8) {
    lo |= static_cast<std::uint64_t>(mpz_getlimbn(z.get_mpz_t(), 1)) << 32;
  }
  return z == 0 ? 0 : lo;
}

inline BigInt from_u64(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

inline Rational abs_of(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Smallest k with 2^k >= v (v >= 1).
inline unsigned ceil_log2(std::uint64_t v) {
  unsigned k = 0;
  while (k < 64 && (std::uint64_t{1} << k) < v) ++k;
  return k;
}

}  // namespace iw
