#include "phodge/linalg/gaussian.hpp"

#include <ostream>
#include <stdexcept>

namespace phodge::linalg {

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("GaussianRational: division by zero");
  if (o.im_.is_zero()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  const Rational n = o.norm();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string GaussianRational::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  std::string imag = im_.is_one() ? "i" : (im_ == Rational(-1) ? "-i" : im_.to_string() + "i");
  if (re_.is_zero()) return imag;
  if (imag.front() == '-') return re_.to_string() + imag;
  return re_.to_string() + "+" + imag;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.to_string(); }

}  // namespace phodge::linalg
