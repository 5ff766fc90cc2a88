#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace phodge::linalg {

/// Exact rational number.
///
/// Values whose numerator and denominator fit in 64 bits are kept inline and
/// handled with 128-bit intermediates; anything larger falls back to a GMP
/// rational. The representation is always canonical (reduced, positive
/// denominator, inline whenever it fits), so equality is structural.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& o);
  Rational(Rational&& o) noexcept : num_(o.num_), den_(o.den_), big_(o.big_) {
    o.big_ = nullptr;
  }
  Rational& operator=(const Rational& o);
  Rational& operator=(Rational&& o) noexcept;
  ~Rational() { delete big_; }

  /// Parses "p", "-p" or "p/q".
  static Rational parse(std::string_view text);

  bool is_zero() const { return big_ == nullptr && num_ == 0; }
  bool is_one() const { return big_ == nullptr && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;

  /// Exact conversion; throws std::overflow_error when not a 64-bit integer.
  std::int64_t to_int64() const;
  mpq_class to_mpq() const;
  std::string to_string() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b);
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  void set_big(mpq_class&& q);
  void assign_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  mpq_class* big_ = nullptr;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }

}  // namespace phodge::linalg
