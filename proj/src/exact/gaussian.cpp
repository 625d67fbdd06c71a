#include "incwb/exact/gaussian.hpp"

#include <stdexcept>

namespace incwb {

GaussianRational GaussianRational::inverse() const {
  const Rational n = norm();
  if (n.is_zero()) throw std::domain_error("GaussianRational: inverse of zero");
  return {re / n, -im / n};
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (im.is_zero() && o.im.is_zero()) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string GaussianRational::to_string() const {
  if (im.is_zero()) return re.to_string();
  return "(" + re.to_string() + (im.sign() < 0 ? " - " : " + ") + im.abs().to_string() + "*i)";
}

}  // namespace incwb
