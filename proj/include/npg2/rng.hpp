#pragma once

#include <random>

#include "npg2/form.hpp"

namespace npg2 {

/// Seeded sampler producing small-integer-coefficient test data. Integer
/// coefficients in [-9, 9] keep the rational backend fast and reproducible.
class Sampler {
 public:
  explicit Sampler(uint64_t seed) : rng_(seed), coeff_(-9, 9) {}

  /// Independent derived stream, for per-trial parallelism.
  Sampler fork(uint64_t salt) const {
    std::mt19937_64 r = rng_;
    return Sampler(r() ^ (0x9e3779b97f4a7c15ull * (salt + 1)));
  }

  int coeff() { return coeff_(rng_); }

  template <class T>
  Form<T> form(int degree) {
    Form<T> f(degree);
    for (int i = 0; i < f.size(); ++i) f[i] = T(coeff());
    return f;
  }

  template <class T>
  Vec7<T> vector() {
    Vec7<T> v;
    for (int i = 0; i < 7; ++i) v[i] = T(coeff());
    return v;
  }

  template <class T>
  Endo<T> endo() {
    Endo<T> e;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) e(i, j) = T(coeff());
    return e;
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_int_distribution<int> coeff_;
};

}  // namespace npg2
