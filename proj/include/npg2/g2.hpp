#pragma once

#include <optional>
#include <stdexcept>

#include "npg2/form.hpp"

namespace npg2 {

/// The model associative 3-form phi0 = e^{123}+e^{176}+e^{257}+e^{653}
///                                    +e^{145}+e^{246}+e^{347}.
template <class T>
Form<T> phi0() {
  Form<T> phi(3);
  auto add = [&phi](int a, int b, int c, int s) {
    // indices as written in the monomial; sort and track the sign
    int idx[3] = {a, b, c};
    int sign = s;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (idx[i] > idx[j]) {
          std::swap(idx[i], idx[j]);
          sign = -sign;
        }
    uint8_t m = uint8_t((1 << (idx[0] - 1)) | (1 << (idx[1] - 1)) |
                        (1 << (idx[2] - 1)));
    phi.at_mask(m) += T(sign);
  };
  add(1, 2, 3, 1);
  add(1, 7, 6, 1);
  add(2, 5, 7, 1);
  add(6, 5, 3, 1);
  add(1, 4, 5, 1);
  add(2, 4, 6, 1);
  add(3, 4, 7, 1);
  return phi;
}

/// Symmetric bilinear form defined by (X.phi)^(Y.phi)^phi = -6 g(X,Y) vol,
/// where vol is the volume form of g itself. The coefficient extraction
/// against e^{1...7} yields g~ = g det(g)^{1/2}; normalizing by det(g~)^{1/9}
/// recovers g (so a lambda^3-scaled input produces a lambda^2-scaled metric).
/// Returns nullopt when the extracted form is degenerate or wrongly oriented.
template <class T>
std::optional<Endo<T>> metric_from_phi(const Form<T>& phi) {
  if (phi.degree() != 3) throw std::invalid_argument("metric_from_phi: degree");
  Endo<T> g;
  T minus6inv = T(-1);
  minus6inv /= T(6);
  for (int i = 0; i < 7; ++i) {
    Form<T> ui = interior(Vec7<T>::basis(i), phi);
    for (int j = i; j < 7; ++j) {
      Form<T> uj = interior(Vec7<T>::basis(j), phi);
      Form<T> top = wedge(wedge(ui, uj), phi);
      T val = minus6inv * top[0];
      g(i, j) = val;
      g(j, i) = val;
    }
  }
  // determinant via exact fraction Gaussian elimination on a copy
  auto gc = g;
  T det(1);
  for (int col = 0; col < 7; ++col) {
    int piv = -1;
    for (int r = col; r < 7; ++r)
      if (!npg2::is_zero(gc(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    if (piv != col) {
      for (int c = 0; c < 7; ++c) std::swap(gc.m[piv][c], gc.m[col][c]);
      det = -det;
    }
    det *= gc(col, col);
    for (int r = col + 1; r < 7; ++r) {
      if (npg2::is_zero(gc(r, col))) continue;
      T f = gc(r, col) / gc(col, col);
      for (int c = col; c < 7; ++c) gc(r, c) -= f * gc(col, c);
    }
  }
  if (npg2::to_double(det) <= 0.0) return std::nullopt;
  T scale = T(1) / ninth_root(det);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) g(i, j) *= scale;
  return g;
}

/// The G2-structure layer bound to the standard frame: phi, psi = *phi,
/// the memoized cross-product table and the tau0 = 4 normalization.
template <class T>
class G2Structure {
 public:
  static const G2Structure& standard() {
    static const G2Structure s;
    return s;
  }

  const Form<T>& phi() const { return phi_; }
  const Form<T>& psi() const { return psi_; }
  T tau0() const { return T(4); }

  /// Cross product: g(X, A(Y,Z)) = phi(X,Y,Z).
  Vec7<T> cross(const Vec7<T>& y, const Vec7<T>& z) const {
    Vec7<T> out;
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) {
        if (npg2::is_zero(y[j]) || npg2::is_zero(z[k])) continue;
        out += (y[j] * z[k]) * cross_table_[j][k];
      }
    return out;
  }

  /// A_{e_j} as an endomorphism (memoized; hot in the Peter-Weyl layer).
  const Endo<T>& cross_endo(int j) const { return cross_endo_[j]; }

  /// chi: (1/2) g(X, chi(Y,Z,W)) = psi(X,Y,Z,W).
  Vec7<T> chi(const Vec7<T>& y, const Vec7<T>& z, const Vec7<T>& w) const {
    // psi(e_i, y, z, w) = (e_i . psi)(y, z, w)
    Vec7<T> out;
    for (int i = 0; i < 7; ++i) {
      Form<T> ei_psi = interior(Vec7<T>::basis(i), psi_);
      out[i] = T(2) * evaluate(ei_psi, {y, z, w});
    }
    return out;
  }

  /// Projection of a 2-form onto Lambda^2_7 + Lambda^2_14 via the eigenspace
  /// split of beta -> *(phi ^ beta) (eigenvalues -2 and +1).
  std::pair<Form<T>, Form<T>> project2(const Form<T>& beta) const {
    if (beta.degree() != 2) throw std::invalid_argument("project2: degree");
    Form<T> l = hodge(wedge(phi_, beta));
    T third = T(1) / T(3);
    Form<T> p7 = third * (beta - l);
    Form<T> p14 = third * (l + T(2) * beta);
    return {p7, p14};
  }

  /// Orthogonal projection of a 3-form onto span(phi) + {X . psi} + Lambda^3_27.
  std::array<Form<T>, 3> project3(const Form<T>& alpha) const {
    if (alpha.degree() != 3) throw std::invalid_argument("project3: degree");
    Form<T> p1 = (form_inner(alpha, phi_) / T(7)) * phi_;
    Form<T> p7(3);
    for (int i = 0; i < 7; ++i) {
      Form<T> bi = interior(Vec7<T>::basis(i), psi_);
      p7 += (form_inner(alpha, bi) / T(4)) * bi;
    }
    Form<T> p27 = alpha - p1 - p7;
    return {p1, p7, p27};
  }

  /// i: Sym0 -> Lambda^3_27, H -> -2 H* phi. Rejects non-symmetric or
  /// traceful input.
  Form<T> imap(const Endo<T>& h) const {
    auto parts = endo_split(h);
    if (!parts.skew.is_zero() || !npg2::is_zero(parts.trace))
      throw std::invalid_argument("imap: input must be symmetric trace-free");
    return T(-2) * endo_extend(h, phi_);
  }

  /// j(gamma)(X,Y) = *((X.phi) ^ (Y.phi) ^ gamma); j = -8 i^{-1} on Sym0.
  Endo<T> jmap(const Form<T>& gamma) const {
    if (gamma.degree() != 3) throw std::invalid_argument("jmap: degree");
    Endo<T> out;
    for (int i = 0; i < 7; ++i) {
      Form<T> ui = interior(Vec7<T>::basis(i), phi_);
      for (int j = i; j < 7; ++j) {
        Form<T> uj = interior(Vec7<T>::basis(j), phi_);
        T val = hodge(wedge(wedge(ui, uj), gamma))[0];
        out(i, j) = val;
        out(j, i) = val;
      }
    }
    return out;
  }

 private:
  G2Structure() : phi_(phi0<T>()), psi_(hodge(phi_)) {
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) {
        Vec7<T> a;
        for (int i = 0; i < 7; ++i)
          a[i] = evaluate(phi_, {Vec7<T>::basis(i), Vec7<T>::basis(j),
                                 Vec7<T>::basis(k)});
        cross_table_[j][k] = a;
      }
    for (int j = 0; j < 7; ++j) {
      Endo<T> aj;
      for (int k = 0; k < 7; ++k)
        for (int i = 0; i < 7; ++i) aj(i, k) = cross_table_[j][k][i];
      cross_endo_[j] = aj;
    }
  }

  Form<T> phi_;
  Form<T> psi_;
  std::array<std::array<Vec7<T>, 7>, 7> cross_table_;
  std::array<Endo<T>, 7> cross_endo_;
};

/// A_{X*} on 2-tensors (derivation): A_X t - t A_X for t as a matrix.
template <class T>
Endo<T> cross_star2(const G2Structure<T>& g2, const Vec7<T>& x,
                    const Endo<T>& t) {
  Endo<T> ax;
  for (int j = 0; j < 7; ++j) {
    if (npg2::is_zero(x[j])) continue;
    ax += x[j] * g2.cross_endo(j);
  }
  return ax * t - t * ax;
}

/// The sign-twisted extension: A_X alpha (x) beta - alpha (x) A_X beta,
/// i.e. A_X t + t A_X on matrices. Swaps Sym and Lambda^2.
template <class T>
Endo<T> tilde_extend(const G2Structure<T>& g2, const Vec7<T>& x,
                     const Endo<T>& t) {
  Endo<T> ax;
  for (int j = 0; j < 7; ++j) {
    if (npg2::is_zero(x[j])) continue;
    ax += x[j] * g2.cross_endo(j);
  }
  return ax * t + t * ax;
}

}  // namespace npg2
