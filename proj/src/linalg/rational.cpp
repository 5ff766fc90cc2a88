#include "phodge/linalg/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace phodge::linalg {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();
constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

u128 uabs(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t uabs64(std::int64_t v) {
  return v < 0 ? std::uint64_t(0) - std::uint64_t(v) : std::uint64_t(v);
}

mpz_class to_mpz(i128 v) {
  const bool neg = v < 0;
  u128 mag = uabs(v);
  mpz_class hi(static_cast<unsigned long>(std::uint64_t(mag >> 64)));
  mpz_class lo(static_cast<unsigned long>(std::uint64_t(mag)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

bool fits(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  assign_wide(n, d);
}

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  set_big(std::move(c));
}

Rational::Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
  if (o.big_) big_ = new mpq_class(*o.big_);
}

Rational& Rational::operator=(const Rational& o) {
  if (this == &o) return *this;
  num_ = o.num_;
  den_ = o.den_;
  if (o.big_) {
    if (big_) {
      *big_ = *o.big_;
    } else {
      big_ = new mpq_class(*o.big_);
    }
  } else {
    delete big_;
    big_ = nullptr;
  }
  return *this;
}

Rational& Rational::operator=(Rational&& o) noexcept {
  if (this == &o) return *this;
  delete big_;
  num_ = o.num_;
  den_ = o.den_;
  big_ = o.big_;
  o.big_ = nullptr;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/')) {
      throw std::invalid_argument("bad rational literal '" + s + "'");
    }
  }
  if (s.front() == '+') s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Rational(q);
}

void Rational::set_big(mpq_class&& q) {
  if (fits(q.get_num()) && fits(q.get_den())) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    delete big_;
    big_ = nullptr;
    return;
  }
  if (big_) {
    *big_ = std::move(q);
  } else {
    big_ = new mpq_class(std::move(q));
  }
  num_ = 0;
  den_ = 1;
}

void Rational::assign_wide(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (d != 1) {
    u128 g = gcd128(uabs(n), u128(d));
    if (g > 1) {
      n /= i128(g);
      d /= i128(g);
    }
  }
  if (n >= kMin64 && n <= kMax64 && d <= kMax64) {
    num_ = std::int64_t(n);
    den_ = std::int64_t(d);
    delete big_;
    big_ = nullptr;
    return;
  }
  mpq_class q(to_mpz(n), to_mpz(d));
  set_big(std::move(q));
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

std::int64_t Rational::to_int64() const {
  if (big_ || den_ != 1) throw std::overflow_error("rational is not a 64-bit integer: " + to_string());
  return num_;
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  return q;
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (o.num_ == 0) return *this;
    if (num_ == 0) {
      num_ = o.num_;
      den_ = o.den_;
      return *this;
    }
    if (den_ == o.den_) {
      std::int64_t s;
      if (!__builtin_add_overflow(num_, o.num_, &s)) {
        if (den_ == 1) {
          num_ = s;
          return *this;
        }
        assign_wide(s, den_);
        return *this;
      }
      assign_wide(i128(num_) + i128(o.num_), den_);
      return *this;
    }
    // den_ and o.den_ are at most 2^63, so the cross terms fit in 127 bits.
    const std::uint64_t g = gcd64(std::uint64_t(den_), std::uint64_t(o.den_));
    const i128 da = den_ / std::int64_t(g);
    const i128 db = o.den_ / std::int64_t(g);
    const i128 n1 = i128(num_) * db;
    const i128 n2 = i128(o.num_) * da;
    i128 n;
    if (!__builtin_add_overflow(n1, n2, &n)) {
      assign_wide(n, da * i128(o.den_));
      return *this;
    }
  }
  set_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (!o.big_ && o.num_ != std::numeric_limits<std::int64_t>::min()) {
    Rational neg;
    neg.num_ = -o.num_;
    neg.den_ = o.den_;
    return *this += neg;
  }
  set_big(to_mpq() - o.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0) return *this;
    if (o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t p;
      if (!__builtin_mul_overflow(num_, o.num_, &p)) {
        num_ = p;
        return *this;
      }
      assign_wide(i128(num_) * i128(o.num_), 1);
      return *this;
    }
    const std::int64_t g1 = std::int64_t(gcd64(uabs64(num_), std::uint64_t(o.den_)));
    const std::int64_t g2 = std::int64_t(gcd64(uabs64(o.num_), std::uint64_t(den_)));
    const i128 n = i128(num_ / g1) * i128(o.num_ / g2);
    const i128 d = i128(den_ / g2) * i128(o.den_ / g1);
    if (n >= kMin64 && n <= kMax64 && d <= kMax64) {
      num_ = std::int64_t(n);
      den_ = std::int64_t(d);
      return *this;
    }
    set_big(mpq_class(to_mpz(n), to_mpz(d)));
    return *this;
  }
  set_big(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  if (!o.big_) {
    Rational inv;
    if (o.num_ != std::numeric_limits<std::int64_t>::min()) {
      inv.num_ = o.num_ < 0 ? -o.den_ : o.den_;
      inv.den_ = o.num_ < 0 ? -o.num_ : o.num_;
      return *this *= inv;
    }
  }
  set_big(to_mpq() / o.to_mpq());
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  if (!big_ && num_ != std::numeric_limits<std::int64_t>::min()) {
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  r.set_big(mpq_class(-to_mpq()));
  return r;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical form: a big value never equals an inline one
}

bool operator<(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  return a.to_mpq() < b.to_mpq();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace phodge::linalg
