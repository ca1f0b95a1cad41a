#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace npg2 {

/// Exact rational scalar for the certification backend.
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return static_cast<double>(r); }
inline double to_double(double d) { return d; }

template <class T>
inline bool is_zero(const T& x) {
  if constexpr (std::is_same_v<T, Rat>) {
    return x == 0;
  } else {
    return x == 0.0;
  }
}

template <class T>
inline double abs_double(const T& x) {
  return std::fabs(to_double(x));
}

/// Exact integer ninth root; returns false when n is not a perfect power.
inline bool ninth_root_exact(const boost::multiprecision::cpp_int& n,
                             boost::multiprecision::cpp_int& out) {
  using boost::multiprecision::cpp_int;
  if (n < 0) return false;
  if (n == 0) {
    out = 0;
    return true;
  }
  cpp_int r(std::max(1.0, std::floor(std::pow(to_double(Rat(n)), 1.0 / 9.0))));
  while (boost::multiprecision::pow(r, 9) > n) --r;
  while (boost::multiprecision::pow(r + 1, 9) <= n) ++r;
  if (boost::multiprecision::pow(r, 9) != n) return false;
  out = r;
  return true;
}

/// Ninth root of a positive scalar. For the rational backend the root must be
/// exact; otherwise a domain_error signals that the input leaves the
/// rationally certifiable orbit.
inline Rat ninth_root(const Rat& x) {
  using boost::multiprecision::cpp_int;
  cpp_int num, den;
  if (!ninth_root_exact(numerator(x), num) ||
      !ninth_root_exact(denominator(x), den))
    throw std::domain_error("ninth_root: not an exact rational power");
  return Rat(num, den);
}
inline double ninth_root(double x) { return std::pow(x, 1.0 / 9.0); }

}  // namespace npg2
