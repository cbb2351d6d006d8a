#ifndef BUBBLES_INTERVAL_HPP
#define BUBBLES_INTERVAL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

#include "bubbles/geometry.hpp"  // Error

namespace bubbles {

// Outward-rounded interval arithmetic.  Every elementary operation computes
// the correctly rounded result and nudges it outward by one ulp unless an
// error-free transformation shows the result is exact, so exact arithmetic
// (2 + 2, sqrt(1), x - x) stays exact while every inexact step is enclosed.
template <class F>
struct Iv {
  F lo = 0, hi = 0;

  static Iv exact(F v) { return {v, v}; }
  F width() const { return hi - lo; }
  bool contains(F v) const { return lo <= v && v <= hi; }
};

namespace detail {

template <class F>
F next_up(F x) {
  return std::nextafter(x, std::numeric_limits<F>::infinity());
}
template <class F>
F next_down(F x) {
  return std::nextafter(x, -std::numeric_limits<F>::infinity());
}

// sum with sign of the rounding error (Knuth 2Sum)
template <class F>
F sum_err(F a, F b, F s) {
  F bb = s - a;
  F aa = s - bb;
  F eb = b - bb;
  F ea = a - aa;
  return ea + eb;
}

template <class F>
F add_lo(F a, F b) {
  F s = a + b;
  F e = sum_err(a, b, s);
  return e < 0 ? next_down(s) : s;  // e<0: true sum below s
}
template <class F>
F add_hi(F a, F b) {
  F s = a + b;
  F e = sum_err(a, b, s);
  return e > 0 ? next_up(s) : s;
}
template <class F>
F mul_lo(F a, F b) {
  F p = a * b;
  F e = std::fma(a, b, -p);
  return e < 0 ? next_down(p) : p;
}
template <class F>
F mul_hi(F a, F b) {
  F p = a * b;
  F e = std::fma(a, b, -p);
  return e > 0 ? next_up(p) : p;
}
template <class F>
F div_lo(F a, F b) {
  F q = a / b;
  F r = std::fma(q, b, -a);  // a = q*b + r  =>  a/b = q + r/b
  bool true_below = (b > 0) ? (r > 0) : (r < 0);
  return true_below ? next_down(q) : q;
}
template <class F>
F div_hi(F a, F b) {
  F q = a / b;
  F r = std::fma(q, b, -a);
  bool true_above = (b > 0) ? (r < 0) : (r > 0);
  return true_above ? next_up(q) : q;
}
template <class F>
F sqrt_lo(F x) {
  F s = std::sqrt(x);
  F r = std::fma(s, s, -x);  // s^2 - x
  return r > 0 ? next_down(s) : s;
}
template <class F>
F sqrt_hi(F x) {
  F s = std::sqrt(x);
  F r = std::fma(s, s, -x);
  return r < 0 ? next_up(s) : s;
}

}  // namespace detail

template <class F>
Iv<F> operator+(Iv<F> a, Iv<F> b) {
  return {detail::add_lo(a.lo, b.lo), detail::add_hi(a.hi, b.hi)};
}
template <class F>
Iv<F> operator-(Iv<F> a) {
  return {-a.hi, -a.lo};
}
template <class F>
Iv<F> operator-(Iv<F> a, Iv<F> b) {
  return a + (-b);
}
template <class F>
Iv<F> operator*(Iv<F> a, Iv<F> b) {
  using namespace detail;
  F lo = std::min(std::min(mul_lo(a.lo, b.lo), mul_lo(a.lo, b.hi)),
                  std::min(mul_lo(a.hi, b.lo), mul_lo(a.hi, b.hi)));
  F hi = std::max(std::max(mul_hi(a.lo, b.lo), mul_hi(a.lo, b.hi)),
                  std::max(mul_hi(a.hi, b.lo), mul_hi(a.hi, b.hi)));
  return {lo, hi};
}
template <class F>
Iv<F> operator/(Iv<F> a, Iv<F> b) {
  using namespace detail;
  if (b.lo <= 0 && b.hi >= 0)
    throw Error("DomainError", "interval division by an interval containing 0");
  F lo = std::min(std::min(div_lo(a.lo, b.lo), div_lo(a.lo, b.hi)),
                  std::min(div_lo(a.hi, b.lo), div_lo(a.hi, b.hi)));
  F hi = std::max(std::max(div_hi(a.lo, b.lo), div_hi(a.lo, b.hi)),
                  std::max(div_hi(a.hi, b.lo), div_hi(a.hi, b.hi)));
  return {lo, hi};
}

template <class F>
Iv<F> sqrt(Iv<F> a) {
  if (a.hi < 0) throw Error("DomainError", "sqrt of a negative enclosure");
  // a 1-ulp negative sliver can appear when a domain endpoint such as 1/3 is
  // itself outward-rounded; clamp it, reject anything larger
  F tol = F(1e-12) * std::max(F(1), std::abs(a.hi));
  if (a.lo < -tol) throw Error("DomainError", "sqrt of an enclosure containing negatives");
  F lo = a.lo <= 0 ? F(0) : detail::sqrt_lo(a.lo);
  return {lo, detail::sqrt_hi(a.hi)};
}

template <class F>
Iv<F> pi_interval();
template <>
Iv<double> pi_interval<double>();
template <>
Iv<long double> pi_interval<long double>();

// exact int64 -> F conversion interval (int64 values used here fit exactly)
template <class F>
Iv<F> rational_interval(std::int64_t num, std::int64_t den) {
  Iv<F> n = Iv<F>::exact(static_cast<F>(num));
  Iv<F> d = Iv<F>::exact(static_cast<F>(den));
  return n / d;
}

template <class F>
Iv<F> intersect(Iv<F> a, Iv<F> b) {
  Iv<F> r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (r.lo > r.hi) throw Error("EmptyIntersection", "inconsistent enclosures");
  return r;
}

// Truncated Taylor expansion with interval coefficients: value, first four
// derivative coefficients f^(k)/k!.  Used for range certificates where plain
// interval evaluation loses to dependency at roots of the inequality.
template <class F>
struct Taylor {
  std::array<Iv<F>, 5> c{};

  static Taylor constant(Iv<F> v) {
    Taylor t;
    t.c[0] = v;
    return t;
  }
  static Taylor variable(Iv<F> x) {
    Taylor t;
    t.c[0] = x;
    t.c[1] = Iv<F>::exact(1);
    return t;
  }
};

template <class F>
Taylor<F> operator+(const Taylor<F>& a, const Taylor<F>& b) {
  Taylor<F> r;
  for (int k = 0; k < 5; ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}
template <class F>
Taylor<F> operator-(const Taylor<F>& a, const Taylor<F>& b) {
  Taylor<F> r;
  for (int k = 0; k < 5; ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}
template <class F>
Taylor<F> operator*(const Taylor<F>& a, const Taylor<F>& b) {
  Taylor<F> r;
  for (int k = 0; k < 5; ++k) {
    Iv<F> s = Iv<F>::exact(0);
    for (int i = 0; i <= k; ++i) s = s + a.c[i] * b.c[k - i];
    r.c[k] = s;
  }
  return r;
}
template <class F>
Taylor<F> operator/(const Taylor<F>& a, const Taylor<F>& b) {
  Taylor<F> r;
  r.c[0] = a.c[0] / b.c[0];
  for (int k = 1; k < 5; ++k) {
    Iv<F> s = a.c[k];
    for (int i = 0; i < k; ++i) s = s - r.c[i] * b.c[k - i];
    r.c[k] = s / b.c[0];
  }
  return r;
}
template <class F>
Taylor<F> sqrt(const Taylor<F>& a) {
  Taylor<F> r;
  r.c[0] = sqrt(a.c[0]);
  Iv<F> two_s0 = r.c[0] + r.c[0];
  for (int k = 1; k < 5; ++k) {
    Iv<F> s = a.c[k];
    for (int i = 1; i < k; ++i) s = s - r.c[i] * r.c[k - i];
    r.c[k] = s / two_s0;
  }
  return r;
}

}  // namespace bubbles

#endif
