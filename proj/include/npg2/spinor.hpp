#pragma once

#include "npg2/g2.hpp"
#include "npg2/identities.hpp"

namespace npg2 {

/// Real spinor in the (f, alpha) model: f on the distinguished unit-spinor
/// line, alpha the 1-form part. kappa0 = (1, 0).
template <class T>
struct Spinor {
  T f = T(0);
  Vec7<T> alpha;

  static Spinor kappa0() { return {T(1), Vec7<T>()}; }

  Spinor& operator+=(const Spinor& o) {
    f += o.f;
    alpha += o.alpha;
    return *this;
  }
  Spinor& operator-=(const Spinor& o) {
    f -= o.f;
    alpha -= o.alpha;
    return *this;
  }
  Spinor& operator*=(const T& s) {
    f *= s;
    alpha = s * alpha;
    return *this;
  }
  friend Spinor operator+(Spinor a, const Spinor& b) { return a += b; }
  friend Spinor operator-(Spinor a, const Spinor& b) { return a -= b; }
  friend Spinor operator*(const T& s, Spinor a) { return a *= s; }
  friend Spinor operator-(Spinor a) {
    a.f = -a.f;
    a.alpha = -a.alpha;
    return a;
  }
  bool is_zero() const { return npg2::is_zero(f) && alpha.is_zero(); }
  friend bool operator==(const Spinor& a, const Spinor& b) {
    return (a - b).is_zero();
  }
};

template <class T>
T spin_inner(const Spinor<T>& a, const Spinor<T>& b) {
  return a.f * b.f + dot(a.alpha, b.alpha);
}

template <class T>
double max_abs(const Spinor<T>& s) {
  return std::max(abs_double(s.f), max_abs(s.alpha));
}

/// Clifford action of a vector: Y.(f, alpha) = (-g(Y,alpha), fY + A_Y alpha).
template <class T>
Spinor<T> clifford_vector(const G2Structure<T>& g2, const Vec7<T>& y,
                          const Spinor<T>& s) {
  Spinor<T> out;
  out.f = -dot(y, s.alpha);
  out.alpha = s.f * y + g2.cross(y, s.alpha);
  return out;
}

/// Clifford action of a form: the ordered monomial e^{i1...ip} (i1<...<ip)
/// acts as e_{i1}.(e_{i2}.(... e_{ip}. s)), extended linearly.
template <class T>
Spinor<T> clifford_form(const G2Structure<T>& g2, const Form<T>& u,
                        const Spinor<T>& s) {
  if (u.degree() == 0) return u[0] * s;
  Spinor<T> out;
  const auto& masks = combi::masks_by_degree()[u.degree()];
  for (int k = 0; k < static_cast<int>(masks.size()); ++k) {
    if (npg2::is_zero(u[k])) continue;
    Spinor<T> cur = s;
    for (int i = 0; i < 7; ++i)
      if (masks[k] & (1 << (6 - i)))
        cur = clifford_vector(g2, Vec7<T>::basis(6 - i), cur);
    out += u[k] * cur;
  }
  return out;
}

/// Spin representation of a skew endomorphism B: -(1/4) B_{kl} e_k.e_l for
/// the row-major convention (Bx)_k = B_{kl} x_l, so that
/// [rep(B), x.] = (Bx). as operators on spinors.
template <class T>
Spinor<T> spin_rep(const G2Structure<T>& g2, const Endo<T>& b,
                   const Spinor<T>& s) {
  Spinor<T> out;
  T quarter = T(-1) / T(4);
  for (int k = 0; k < 7; ++k)
    for (int l = 0; l < 7; ++l) {
      if (npg2::is_zero(b(k, l))) continue;
      Spinor<T> t =
          clifford_vector(g2, Vec7<T>::basis(k),
                          clifford_vector(g2, Vec7<T>::basis(l), s));
      out += (quarter * b(k, l)) * t;
    }
  return out;
}

/// Element of S (x) T stored by columns: column i is the spinor coefficient
/// of (x) e_i.
template <class T>
struct SpinTensor {
  std::array<Spinor<T>, 7> col;

  Spinor<T>& operator[](int i) { return col[i]; }
  const Spinor<T>& operator[](int i) const { return col[i]; }

  SpinTensor& operator+=(const SpinTensor& o) {
    for (int i = 0; i < 7; ++i) col[i] += o.col[i];
    return *this;
  }
  SpinTensor& operator-=(const SpinTensor& o) {
    for (int i = 0; i < 7; ++i) col[i] -= o.col[i];
    return *this;
  }
  SpinTensor& operator*=(const T& s) {
    for (auto& c : col) c *= s;
    return *this;
  }
  friend SpinTensor operator+(SpinTensor a, const SpinTensor& b) {
    return a += b;
  }
  friend SpinTensor operator-(SpinTensor a, const SpinTensor& b) {
    return a -= b;
  }
  friend SpinTensor operator*(const T& s, SpinTensor a) { return a *= s; }
  bool is_zero() const {
    for (const auto& c : col)
      if (!c.is_zero()) return false;
    return true;
  }
  friend bool operator==(const SpinTensor& a, const SpinTensor& b) {
    return (a - b).is_zero();
  }
};

template <class T>
T spin_inner(const SpinTensor<T>& a, const SpinTensor<T>& b) {
  T s(0);
  for (int i = 0; i < 7; ++i) s += spin_inner(a[i], b[i]);
  return s;
}

template <class T>
double max_abs(const SpinTensor<T>& t) {
  double m = 0;
  for (int i = 0; i < 7; ++i) m = std::max(m, max_abs(t[i]));
  return m;
}

/// Psi^{(H, base)}: column i = H(e_i) . base.
template <class T>
SpinTensor<T> psi_from_endo(const G2Structure<T>& g2, const Endo<T>& h,
                            const Spinor<T>& base) {
  SpinTensor<T> out;
  for (int i = 0; i < 7; ++i)
    out[i] = clifford_vector(g2, h.apply(Vec7<T>::basis(i)), base);
  return out;
}

/// Clifford contraction sum e_i . (column i); the obstruction to lying in
/// the 48-dimensional summand.
template <class T>
Spinor<T> spin_tensor_contract(const G2Structure<T>& g2,
                               const SpinTensor<T>& t) {
  Spinor<T> out;
  for (int i = 0; i < 7; ++i)
    out += clifford_vector(g2, Vec7<T>::basis(i), t[i]);
  return out;
}

/// Embedding of a spinor along the contraction adjoint: zeta -> sum over i of
/// (e_i . zeta) (x) e_i.
template <class T>
SpinTensor<T> spin_tensor_embed(const G2Structure<T>& g2,
                                const Spinor<T>& zeta) {
  SpinTensor<T> out;
  for (int i = 0; i < 7; ++i)
    out[i] = clifford_vector(g2, Vec7<T>::basis(i), zeta);
  return out;
}

/// Orthogonal projection onto the kernel of the Clifford contraction
/// (rank 48 = 56 - 8); the complement is the image of the embedding.
template <class T>
SpinTensor<T> s32_project(const G2Structure<T>& g2, const SpinTensor<T>& t) {
  Spinor<T> c = spin_tensor_contract(g2, t);
  T seventh = T(1) / T(7);
  return t + seventh * spin_tensor_embed(g2, c);
}

template <class T>
struct SpinTensorParts {
  Vec7<T> lambda1;   // the spinor-line block
  Form<T> w7{2};     // 7-dimensional 2-form block
  Form<T> w14{2};    // 14-dimensional 2-form block
  Endo<T> sym0;      // trace-free symmetric block
  T trace = T(0);    // metric-trace block
};

/// Blockwise split of the alpha-components: the f-parts give a 1-form, the
/// alpha-parts form a 2-tensor split into skew (then 7 + 14) and symmetric
/// (trace-free + trace) pieces. Recomposition is exact.
template <class T>
SpinTensorParts<T> decompose_spin_tensor(const G2Structure<T>& g2,
                                         const SpinTensor<T>& t) {
  SpinTensorParts<T> out;
  Endo<T> m;
  for (int i = 0; i < 7; ++i) {
    out.lambda1[i] = t[i].f;
    for (int k = 0; k < 7; ++k) m(k, i) = t[i].alpha[k];
  }
  auto parts = endo_split(m);
  out.sym0 = parts.sym0;
  out.trace = parts.trace;
  Form<T> w(2);
  const auto& masks = combi::masks_by_degree()[2];
  for (int k = 0; k < static_cast<int>(masks.size()); ++k) {
    int a = __builtin_ctz(masks[k]);
    int b = __builtin_ctz(uint8_t(masks[k] & (masks[k] - 1)));
    w[k] = parts.skew(a, b);
  }
  auto [w7, w14] = g2.project2(w);
  out.w7 = w7;
  out.w14 = w14;
  return out;
}

/// Inverse of decompose_spin_tensor.
template <class T>
SpinTensor<T> recompose_spin_tensor(const G2Structure<T>& g2,
                                    const SpinTensorParts<T>& p) {
  Endo<T> m = p.sym0 + skew_endo_from_form(p.w7 + p.w14);
  T t7 = p.trace / T(7);
  for (int i = 0; i < 7; ++i) m(i, i) += t7;
  SpinTensor<T> out;
  for (int i = 0; i < 7; ++i) {
    out[i].f = p.lambda1[i];
    for (int k = 0; k < 7; ++k) out[i].alpha[k] = m(k, i);
  }
  return out;
}

}  // namespace npg2
