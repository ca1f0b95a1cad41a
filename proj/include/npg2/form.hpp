#pragma once

#include <array>
#include <cassert>
#include <stdexcept>
#include <vector>

#include "npg2/combinatorics.hpp"
#include "npg2/scalar.hpp"

namespace npg2 {

template <class T>
struct Vec7;

/// Exterior form of fixed degree over the oriented orthonormal 7-frame.
/// Coefficients are stored densely, indexed by the fixed subset enumeration.
template <class T>
class Form {
 public:
  Form() : degree_(0), c_(1, T(0)) {}
  explicit Form(int degree)
      : degree_(degree), c_(combi::kBinom[degree], T(0)) {
    assert(degree >= 0 && degree <= 7);
  }

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(c_.size()); }

  T& operator[](int i) { return c_[i]; }
  const T& operator[](int i) const { return c_[i]; }

  T& at_mask(uint8_t mask) { return c_[combi::mask_index(mask)]; }
  const T& at_mask(uint8_t mask) const { return c_[combi::mask_index(mask)]; }

  // Coefficient addressed by 1-based indices as the tuples are written on
  // paper, e.g. coeff({1,2,3}). Indices need not be sorted; the sign of the
  // sorting permutation is NOT applied here (monomial lookup only).
  const T& coeff(std::initializer_list<int> idx) const {
    uint8_t m = 0;
    for (int i : idx) m |= uint8_t(1 << (i - 1));
    assert(__builtin_popcount(m) == degree_);
    return at_mask(m);
  }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!npg2::is_zero(x)) return false;
    return true;
  }

  Form& operator+=(const Form& o) {
    assert(degree_ == o.degree_);
    for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Form& operator-=(const Form& o) {
    assert(degree_ == o.degree_);
    for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Form& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const T& s, Form a) { return a *= s; }
  friend Form operator-(Form a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend bool operator==(const Form& a, const Form& b) {
    if (a.degree_ != b.degree_) return a.is_zero() && b.is_zero();
    for (int i = 0; i < a.size(); ++i)
      if (!npg2::is_zero(a.c_[i] - b.c_[i])) return false;
    return true;
  }

 private:
  int degree_;
  std::vector<T> c_;
};

/// Tangent vector, identified with a 1-form via the (standard) metric.
template <class T>
struct Vec7 {
  std::array<T, 7> v{};

  Vec7() { v.fill(T(0)); }
  static Vec7 basis(int i) {
    Vec7 x;
    x.v[i] = T(1);
    return x;
  }

  T& operator[](int i) { return v[i]; }
  const T& operator[](int i) const { return v[i]; }

  Form<T> as_form() const {
    Form<T> f(1);
    for (int i = 0; i < 7; ++i) f[i] = v[i];
    return f;
  }
  static Vec7 from_form(const Form<T>& f) {
    assert(f.degree() == 1);
    Vec7 x;
    for (int i = 0; i < 7; ++i) x.v[i] = f[i];
    return x;
  }

  Vec7& operator+=(const Vec7& o) {
    for (int i = 0; i < 7; ++i) v[i] += o.v[i];
    return *this;
  }
  Vec7& operator-=(const Vec7& o) {
    for (int i = 0; i < 7; ++i) v[i] -= o.v[i];
    return *this;
  }
  friend Vec7 operator+(Vec7 a, const Vec7& b) { return a += b; }
  friend Vec7 operator-(Vec7 a, const Vec7& b) { return a -= b; }
  friend Vec7 operator*(const T& s, Vec7 a) {
    for (auto& x : a.v) x *= s;
    return a;
  }
  friend Vec7 operator-(Vec7 a) {
    for (auto& x : a.v) x = -x;
    return a;
  }
  bool is_zero() const {
    for (const auto& x : v)
      if (!npg2::is_zero(x)) return false;
    return true;
  }
};

template <class T>
inline T dot(const Vec7<T>& a, const Vec7<T>& b) {
  T s(0);
  for (int i = 0; i < 7; ++i) s += a[i] * b[i];
  return s;
}

/// 7x7 tensor; used both as an endomorphism of the tangent space and as an
/// element of T*M (x) T*M depending on context.
template <class T>
struct Endo {
  std::array<std::array<T, 7>, 7> m{};

  Endo() {
    for (auto& row : m) row.fill(T(0));
  }
  static Endo identity() {
    Endo e;
    for (int i = 0; i < 7; ++i) e.m[i][i] = T(1);
    return e;
  }

  T& operator()(int i, int j) { return m[i][j]; }
  const T& operator()(int i, int j) const { return m[i][j]; }

  Vec7<T> apply(const Vec7<T>& x) const {
    Vec7<T> y;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) y[i] += m[i][j] * x[j];
    return y;
  }

  Endo transpose() const {
    Endo t;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) t.m[i][j] = m[j][i];
    return t;
  }

  T trace() const {
    T s(0);
    for (int i = 0; i < 7; ++i) s += m[i][i];
    return s;
  }

  Endo& operator+=(const Endo& o) {
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) m[i][j] += o.m[i][j];
    return *this;
  }
  Endo& operator-=(const Endo& o) {
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) m[i][j] -= o.m[i][j];
    return *this;
  }
  friend Endo operator+(Endo a, const Endo& b) { return a += b; }
  friend Endo operator-(Endo a, const Endo& b) { return a -= b; }
  friend Endo operator*(const T& s, Endo a) {
    for (auto& row : a.m)
      for (auto& x : row) x *= s;
    return a;
  }
  friend Endo operator-(Endo a) {
    for (auto& row : a.m)
      for (auto& x : row) x = -x;
    return a;
  }
  friend Endo operator*(const Endo& a, const Endo& b) {
    Endo c;
    for (int i = 0; i < 7; ++i)
      for (int k = 0; k < 7; ++k)
        for (int j = 0; j < 7; ++j) c.m[i][j] += a.m[i][k] * b.m[k][j];
    return c;
  }
  bool is_zero() const {
    for (const auto& row : m)
      for (const auto& x : row)
        if (!npg2::is_zero(x)) return false;
    return true;
  }
  friend bool operator==(const Endo& a, const Endo& b) {
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        if (!npg2::is_zero(a.m[i][j] - b.m[i][j])) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Exterior algebra operations
// ---------------------------------------------------------------------------

template <class T>
Form<T> wedge(const Form<T>& u, const Form<T>& v) {
  int d = u.degree() + v.degree();
  if (d > 7) return Form<T>(0);
  Form<T> out(d);
  const auto& mu = combi::masks_by_degree()[u.degree()];
  const auto& mv = combi::masks_by_degree()[v.degree()];
  for (int i = 0; i < static_cast<int>(mu.size()); ++i) {
    if (npg2::is_zero(u[i])) continue;
    for (int j = 0; j < static_cast<int>(mv.size()); ++j) {
      if (mu[i] & mv[j]) continue;
      if (npg2::is_zero(v[j])) continue;
      int s = combi::wedge_sign(mu[i], mv[j]);
      T term = u[i] * v[j];
      if (s < 0) term = -term;
      out.at_mask(mu[i] | mv[j]) += term;
    }
  }
  return out;
}

/// Interior product with convention (X . u)(Y1,...,Yp-1) = u(X, Y1, ...).
template <class T>
Form<T> interior(const Vec7<T>& x, const Form<T>& u) {
  if (u.degree() == 0) return Form<T>(0);
  Form<T> out(u.degree() - 1);
  const auto& mu = combi::masks_by_degree()[u.degree()];
  for (int k = 0; k < static_cast<int>(mu.size()); ++k) {
    if (npg2::is_zero(u[k])) continue;
    for (int i = 0; i < 7; ++i) {
      if (!(mu[k] & (1 << i))) continue;
      if (npg2::is_zero(x[i])) continue;
      int s = combi::interior_sign(mu[k], i);
      T term = x[i] * u[k];
      if (s < 0) term = -term;
      out.at_mask(uint8_t(mu[k] & ~(1 << i))) += term;
    }
  }
  return out;
}

/// Hodge star for the orientation vol = e^{1...7}; an involution in dim 7.
template <class T>
Form<T> hodge(const Form<T>& u) {
  Form<T> out(7 - u.degree());
  const auto& mu = combi::masks_by_degree()[u.degree()];
  for (int k = 0; k < static_cast<int>(mu.size()); ++k) {
    if (npg2::is_zero(u[k])) continue;
    uint8_t comp = uint8_t(~mu[k] & 0x7f);
    int s = combi::wedge_sign(mu[k], comp);
    T term = u[k];
    if (s < 0) term = -term;
    out.at_mask(comp) = term;
  }
  return out;
}

/// <u, v> for the metric making the monomials orthonormal.
template <class T>
T form_inner(const Form<T>& u, const Form<T>& v) {
  if (u.degree() != v.degree()) return T(0);
  T s(0);
  for (int i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

/// B* u = -B^t(e_i) ^ (e_i . u), the induced action of an endomorphism.
template <class T>
Form<T> endo_extend(const Endo<T>& b, const Form<T>& u) {
  if (u.degree() == 0) return Form<T>(0);
  Form<T> out(u.degree());
  for (int i = 0; i < 7; ++i) {
    // metric adjoint applied to e_i: B^t e_i, components B(i,j)
    Form<T> bstar_ei(1);
    for (int j = 0; j < 7; ++j) bstar_ei[j] = b(i, j);
    out -= wedge(bstar_ei, interior(Vec7<T>::basis(i), u));
  }
  return out;
}

struct EndoSplit {
  template <class T>
  struct Parts {
    Endo<T> sym0;
    Endo<T> skew;
    T trace;
  };
};

/// B = sym0 + skew + (tr/7) Id, with sym0 trace-free symmetric.
template <class T>
typename EndoSplit::Parts<T> endo_split(const Endo<T>& b) {
  typename EndoSplit::Parts<T> p;
  p.trace = b.trace();
  T half(1);
  half /= T(2);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      p.sym0(i, j) = half * (b(i, j) + b(j, i));
      p.skew(i, j) = half * (b(i, j) - b(j, i));
    }
  T t7 = p.trace / T(7);
  for (int i = 0; i < 7; ++i) p.sym0(i, i) -= t7;
  return p;
}

/// Evaluate a p-form on p vectors (fully antisymmetrized, determinant
/// convention: e^{12}(e_1, e_2) = 1).
template <class T>
T evaluate(const Form<T>& u, const std::vector<Vec7<T>>& xs) {
  assert(static_cast<int>(xs.size()) == u.degree());
  Form<T> cur = u;
  for (const auto& x : xs) cur = interior(x, cur);
  return cur[0];
}

template <class T>
double max_abs(const Form<T>& u) {
  double m = 0;
  for (int i = 0; i < u.size(); ++i) m = std::max(m, abs_double(u[i]));
  return m;
}

template <class T>
double max_abs(const Endo<T>& b) {
  double m = 0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) m = std::max(m, abs_double(b(i, j)));
  return m;
}

template <class T>
double max_abs(const Vec7<T>& x) {
  double m = 0;
  for (int i = 0; i < 7; ++i) m = std::max(m, abs_double(x[i]));
  return m;
}

}  // namespace npg2
