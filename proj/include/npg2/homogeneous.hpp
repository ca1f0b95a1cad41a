#pragma once

#include <vector>

#include "npg2/report.hpp"
#include "npg2/spinor.hpp"

namespace npg2 {

namespace detail {

// skew matrix <-> 21 coordinates in the basis G_ab = E_ab - E_ba, a < b
template <class T>
std::array<T, 21> so7_coords(const Endo<T>& z) {
  std::array<T, 21> out;
  const auto& masks = combi::masks_by_degree()[2];
  for (int k = 0; k < 21; ++k) {
    int a = __builtin_ctz(masks[k]);
    int b = __builtin_ctz(uint8_t(masks[k] & (masks[k] - 1)));
    out[k] = z(a, b);
  }
  return out;
}

template <class T>
Endo<T> so7_from_coords(const std::array<T, 21>& c) {
  Endo<T> z;
  const auto& masks = combi::masks_by_degree()[2];
  for (int k = 0; k < 21; ++k) {
    int a = __builtin_ctz(masks[k]);
    int b = __builtin_ctz(uint8_t(masks[k] & (masks[k] - 1)));
    z(a, b) = c[k];
    z(b, a) = -c[k];
  }
  return z;
}

}  // namespace detail

/// Reductive model of the isotropy split of skew endomorphisms: the
/// 14-dimensional stabilizer subalgebra of phi0 plus the 7-dimensional
/// complement spanned by the 2-forms e_i . phi0, scaled so the canonical
/// torsion is -(2/3)A.
template <class T>
class ReductiveModel {
 public:
  static const ReductiveModel& standard() {
    static const ReductiveModel m;
    return m;
  }

  const std::vector<Endo<T>>& h_basis() const { return h_; }
  const Endo<T>& m_raw(int i) const { return m_raw_[i]; }
  const T& scale() const { return scale_; }

  /// m(X) = scale * sum x_i m_raw(e_i)
  Endo<T> m_of(const Vec7<T>& x) const {
    Endo<T> z;
    for (int i = 0; i < 7; ++i)
      if (!npg2::is_zero(x[i])) z += (scale_ * x[i]) * m_raw_[i];
    return z;
  }

  /// coordinates of a skew matrix in the split basis [h | m_raw]
  std::array<T, 21> split_coords(const Endo<T>& z) const {
    auto c = detail::so7_coords(z);
    std::array<T, 21> out;
    for (int r = 0; r < 21; ++r) {
      out[r] = T(0);
      for (int k = 0; k < 21; ++k) out[r] += basis_inv_[r][k] * c[k];
    }
    return out;
  }

  Endo<T> h_part(const Endo<T>& z) const {
    auto c = split_coords(z);
    Endo<T> out;
    for (int k = 0; k < 14; ++k)
      if (!npg2::is_zero(c[k])) out += c[k] * h_[k];
    return out;
  }

  /// tangent vector with m(v) = m-component of z
  Vec7<T> m_part_tangent(const Endo<T>& z) const {
    auto c = split_coords(z);
    Vec7<T> v;
    for (int i = 0; i < 7; ++i) v[i] = c[14 + i] / scale_;
    return v;
  }

 private:
  ReductiveModel() {
    const auto& g2 = G2Structure<T>::standard();
    // stabilizer subalgebra: exact nullspace of Z -> Z* phi0 over skew Z
    const auto& masks2 = combi::masks_by_degree()[2];
    std::array<std::array<T, 21>, 35> a;  // 35 x 21 action matrix
    for (int k = 0; k < 21; ++k) {
      std::array<T, 21> e{};
      e[k] = T(1);
      Form<T> img = endo_extend(detail::so7_from_coords(e), g2.phi());
      for (int r = 0; r < 35; ++r) a[r][k] = img[r];
    }
    // RREF with exact pivots
    std::array<int, 21> pivot_row;
    pivot_row.fill(-1);
    int rank = 0;
    for (int col = 0; col < 21; ++col) {
      int piv = -1;
      for (int r = rank; r < 35; ++r)
        if (!npg2::is_zero(a[r][col])) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(a[piv], a[rank]);
      T p = a[rank][col];
      for (int c = 0; c < 21; ++c) a[rank][c] /= p;
      for (int r = 0; r < 35; ++r) {
        if (r == rank || npg2::is_zero(a[r][col])) continue;
        T f = a[r][col];
        for (int c = 0; c < 21; ++c) a[r][c] -= f * a[rank][c];
      }
      pivot_row[col] = rank;
      ++rank;
    }
    if (21 - rank != 14)
      throw std::logic_error("reductive model: stabilizer dimension != 14");
    for (int col = 0; col < 21; ++col) {
      if (pivot_row[col] >= 0) continue;
      std::array<T, 21> v{};
      v[col] = T(1);
      for (int c = 0; c < 21; ++c)
        if (pivot_row[c] >= 0) v[c] = -a[pivot_row[c]][col];
      h_.push_back(detail::so7_from_coords(v));
    }

    for (int i = 0; i < 7; ++i)
      m_raw_[i] = skew_endo_from_form(interior(Vec7<T>::basis(i), g2.phi()));

    // invert the 21x21 change of basis [h | m_raw] by Gauss-Jordan
    std::array<std::array<T, 42>, 21> aug;
    for (int r = 0; r < 21; ++r) aug[r].fill(T(0));
    for (int k = 0; k < 14; ++k) {
      auto c = detail::so7_coords(h_[k]);
      for (int r = 0; r < 21; ++r) aug[r][k] = c[r];
    }
    for (int i = 0; i < 7; ++i) {
      auto c = detail::so7_coords(m_raw_[i]);
      for (int r = 0; r < 21; ++r) aug[r][14 + i] = c[r];
    }
    for (int r = 0; r < 21; ++r) aug[r][21 + r] = T(1);
    for (int col = 0; col < 21; ++col) {
      int piv = -1;
      for (int r = col; r < 21; ++r)
        if (!npg2::is_zero(aug[r][col])) {
          piv = r;
          break;
        }
      if (piv < 0) throw std::logic_error("reductive model: split not direct");
      std::swap(aug[piv], aug[col]);
      T p = aug[col][col];
      for (int c = 0; c < 42; ++c) aug[col][c] /= p;
      for (int r = 0; r < 21; ++r) {
        if (r == col || npg2::is_zero(aug[r][col])) continue;
        T f = aug[r][col];
        for (int c = 0; c < 42; ++c) aug[r][c] -= f * aug[col][c];
      }
    }
    for (int r = 0; r < 21; ++r)
      for (int c = 0; c < 21; ++c) basis_inv_[r][c] = aug[r][21 + c];

    // calibrate: with m = s * m_raw the torsion -[X,Y]_m must be -(2/3)A(X,Y)
    scale_ = T(1);
    Endo<T> br = m_raw_[0] * m_raw_[1] - m_raw_[1] * m_raw_[0];
    Vec7<T> tangent = m_part_tangent(br);  // = kappa * e3 at scale 1
    T kappa = tangent[2];
    if (npg2::is_zero(kappa))
      throw std::logic_error("reductive model: degenerate bracket");
    // [m(X), m(Y)]_m-tangent scales by s, so pick s with s*kappa = 2/3
    scale_ = (T(2) / T(3)) / kappa;
  }

  std::vector<Endo<T>> h_;
  std::array<Endo<T>, 7> m_raw_;
  std::array<std::array<T, 21>, 21> basis_inv_;
  T scale_;
};

enum class CurvatureFlavor { LeviCivita, Canonical };

/// Curvature stored as the matrices R(e_i, e_j) acting on tangent vectors.
template <class T>
struct CurvatureTensor {
  CurvatureFlavor flavor;
  std::array<std::array<Endo<T>, 7>, 7> op;

  const Endo<T>& operator()(int i, int j) const { return op[i][j]; }

  /// g(R(e_i,e_j)e_k, e_l)
  T component(int i, int j, int k, int l) const { return op[i][j](l, k); }

  /// the 2-form R(e_i ^ e_j) as a skew matrix
  Endo<T> two_form_image(int i, int j) const { return -op[i][j]; }

  Endo<T> ricci() const {
    Endo<T> ric;
    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b) {
        T s(0);
        for (int i = 0; i < 7; ++i) s += op[i][a](i, b);
        ric(a, b) = s;
      }
    return ric;
  }

  T scal() const { return ricci().trace(); }
};

/// Canonical-connection curvature of the model: R(X,Y)Z = -[[X,Y]_h, Z].
template <class T>
CurvatureTensor<T> curvature_canonical(const ReductiveModel<T>& model) {
  CurvatureTensor<T> out;
  out.flavor = CurvatureFlavor::Canonical;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      Endo<T> mi = model.m_of(Vec7<T>::basis(i));
      Endo<T> mj = model.m_of(Vec7<T>::basis(j));
      Endo<T> hij = model.h_part(mi * mj - mj * mi);
      // [Z_h, m(X)] = m(Z_h X) by equivariance, so the operator is -Z_h
      out.op[i][j] = -hij;
    }
  return out;
}

/// Levi-Civita curvature via the two-connection comparison: the difference
/// tensor is (1/3)A, parallel for the canonical connection, whose torsion is
/// -(2/3)A; hence R = Rbar + (1/9)[A_X, A_Y] - (2/9)A_{A_X Y}.
template <class T>
CurvatureTensor<T> curvature_levi_civita(const ReductiveModel<T>& model) {
  const auto& g2 = G2Structure<T>::standard();
  CurvatureTensor<T> out = curvature_canonical(model);
  out.flavor = CurvatureFlavor::LeviCivita;
  T ninth = T(1) / T(9);
  T two9 = T(2) / T(9);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      const Endo<T>& ai = g2.cross_endo(i);
      const Endo<T>& aj = g2.cross_endo(j);
      out.op[i][j] += ninth * (ai * aj - aj * ai);
      out.op[i][j] -= two9 * cross_endo_of(
                                g2, g2.cross(Vec7<T>::basis(i),
                                             Vec7<T>::basis(j)));
    }
  return out;
}

/// q(R) on tangent vectors: sum over i<j of G_ij o rho(R(e_i ^ e_j)).
template <class T>
Endo<T> q_tangent(const CurvatureTensor<T>& r) {
  Endo<T> out;
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) {
      Endo<T> gij;
      gij(i, j) = T(1);
      gij(j, i) = T(-1);
      out += gij * r.two_form_image(i, j);
    }
  return out;
}

/// q(R) on spinors, as the images of the 8 basis spinors.
template <class T>
std::array<Spinor<T>, 8> q_spinor(const G2Structure<T>& g2,
                                  const CurvatureTensor<T>& r) {
  std::array<Spinor<T>, 8> out;
  for (int b = 0; b < 8; ++b) {
    Spinor<T> s;
    if (b == 0)
      s.f = T(1);
    else
      s.alpha = Vec7<T>::basis(b - 1);
    Spinor<T> acc;
    for (int i = 0; i < 7; ++i)
      for (int j = i + 1; j < 7; ++j) {
        Endo<T> gij;
        gij(i, j) = T(1);
        gij(j, i) = T(-1);
        acc += spin_rep(g2, gij, spin_rep(g2, r.two_form_image(i, j), s));
      }
    out[b] = acc;
  }
  return out;
}

/// q(R) applied to a p-form.
template <class T>
Form<T> q_form(const CurvatureTensor<T>& r, const Form<T>& u) {
  Form<T> out(u.degree());
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) {
      Endo<T> gij;
      gij(i, j) = T(1);
      gij(j, i) = T(-1);
      out += endo_extend(gij, endo_extend(r.two_form_image(i, j), u));
    }
  return out;
}

/// Verification suite for the curvature layer: difference formula, Bianchi
/// identity, symmetries, Ricci normalizations, the spinor curvature
/// endomorphism, the fiberwise Lichnerowicz-type identities, and invariance
/// of q(Rbar) under the 3-form projectors.
template <class T>
CheckReport curvature_suite(uint64_t seed, int trials, double tol = 0.0) {
  const auto& g2 = G2Structure<T>::standard();
  const auto& model = ReductiveModel<T>::standard();
  CurvatureTensor<T> rbar = curvature_canonical(model);
  CurvatureTensor<T> r = curvature_levi_civita(model);
  using V = Vec7<T>;

  CheckReport rep;
  auto worst = [](double& acc, double v) { acc = std::max(acc, v); };

  // (a) difference of the two flavors against the quartic cross formula
  double r_diff = 0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) {
        V w = V::basis(i), x = V::basis(j), y = V::basis(k);
        V lhs = rbar.op[i][j].apply(y) - r.op[i][j].apply(y);
        V rhs = T(4) * g2.cross(g2.cross(w, x), y);
        rhs -= T(3) * dot(w, y) * x;
        rhs += T(3) * dot(x, y) * w;
        rhs = (T(1) / T(9)) * rhs;
        worst(r_diff, max_abs(lhs - rhs));
      }
  rep.add("difference of curvature flavors", r_diff, tol);

  // constant curvature one for the Levi-Civita flavor
  double r_const = 0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) {
        V lhs = r.op[i][j].apply(V::basis(k));
        V rhs = (k == j ? V::basis(i) : V()) - (k == i ? V::basis(j) : V());
        worst(r_const, max_abs(lhs - rhs));
      }
  rep.add("round sphere has constant curvature one", r_const, tol);

  // (b) cyclic sum of the canonical flavor
  double r_bianchi = 0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) {
        V cyc = rbar.op[i][j].apply(V::basis(k)) +
                rbar.op[j][k].apply(V::basis(i)) +
                rbar.op[k][i].apply(V::basis(j));
        V rhs = (T(2) / T(3)) * g2.chi(V::basis(i), V::basis(j), V::basis(k));
        worst(r_bianchi, max_abs(cyc - rhs));
      }
  rep.add("cyclic curvature sum vs chi", r_bianchi, tol);

  // (c) symmetries of both flavors
  double r_sym = 0;
  for (const auto* t : {&r, &rbar})
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        for (int k = 0; k < 7; ++k)
          for (int l = 0; l < 7; ++l) {
            worst(r_sym, abs_double(t->component(i, j, k, l) +
                                    t->component(j, i, k, l)));
            worst(r_sym, abs_double(t->component(i, j, k, l) +
                                    t->component(i, j, l, k)));
            worst(r_sym, abs_double(t->component(i, j, k, l) -
                                    t->component(k, l, i, j)));
          }
  rep.add("curvature tensor symmetries", r_sym, tol);

  // (d) Ricci normalizations, both directly and through q on tangents
  double r_ric = 0;
  worst(r_ric, max_abs(r.ricci() - T(6) * Endo<T>::identity()));
  worst(r_ric, max_abs(rbar.ricci() - (T(16) / T(3)) * Endo<T>::identity()));
  worst(r_ric, max_abs(q_tangent(r) - T(6) * Endo<T>::identity()));
  worst(r_ric, max_abs(q_tangent(rbar) - (T(16) / T(3)) * Endo<T>::identity()));
  worst(r_ric, abs_double(r.scal() - T(42)));
  rep.add("Ricci and scalar normalizations", r_ric, tol);

  // (e) spinor curvature endomorphism = 14/3 - (2/3) psi-action
  double r_qs = 0;
  auto qs = q_spinor(g2, rbar);
  for (int b = 0; b < 8; ++b) {
    Spinor<T> s;
    if (b == 0)
      s.f = T(1);
    else
      s.alpha = V::basis(b - 1);
    Spinor<T> expect = (T(14) / T(3)) * s -
                       (T(2) / T(3)) * clifford_form(g2, g2.psi(), s);
    worst(r_qs, max_abs(qs[b] - expect));
  }
  rep.add("spinor curvature endomorphism", r_qs, tol);

  // (f) contracted spinor curvature identities
  double r_l1 = 0, r_l2 = 0;
  Sampler smp(seed);
  for (int t = 0; t < trials; ++t) {
    Sampler s = smp.fork(uint64_t(t));
    Spinor<T> z{T(s.coeff()), s.vector<T>()};
    for (int a = 0; a < 7; ++a) {
      Spinor<T> lhs;
      for (int j = 0; j < 7; ++j)
        lhs += clifford_vector(g2, V::basis(j),
                               spin_rep(g2, rbar.op[a][j], z));
      Spinor<T> rhs = (T(-8) / T(3)) * clifford_vector(g2, V::basis(a), z) -
                      (T(2) / T(3)) *
                          clifford_form(g2, interior(V::basis(a), g2.psi()), z);
      worst(r_l1, max_abs(lhs - rhs));
    }
    Spinor<T> lhs2;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        lhs2 += clifford_vector(
            g2, V::basis(i),
            clifford_vector(g2, V::basis(j), spin_rep(g2, rbar.op[i][j], z)));
    Spinor<T> rhs2 = (T(56) / T(3)) * z -
                     (T(8) / T(3)) * clifford_form(g2, g2.psi(), z);
    worst(r_l2, max_abs(lhs2 - rhs2));
  }
  rep.add("contracted spinor curvature, first order", r_l1, tol);
  rep.add("contracted spinor curvature, second order", r_l2, tol);

  // (g) q(Rbar) commutes with the 3-form projectors
  double r_proj = 0;
  for (int t = 0; t < trials; ++t) {
    Sampler s = smp.fork(0x1000 + uint64_t(t));
    Form<T> alpha = s.form<T>(3);
    auto p = g2.project3(alpha);
    auto qp = g2.project3(q_form(rbar, alpha));
    for (int c = 0; c < 3; ++c)
      worst(r_proj, max_abs(q_form(rbar, p[c]) - qp[c]));
    Form<T> beta = s.form<T>(2);
    auto [b7, b14] = g2.project2(beta);
    auto [q7, q14] = g2.project2(q_form(rbar, beta));
    worst(r_proj, max_abs(q_form(rbar, b7) - q7));
    worst(r_proj, max_abs(q_form(rbar, b14) - q14));
  }
  rep.add("curvature endomorphism preserves the projectors", r_proj, tol);

  // canonical curvature annihilates phi
  double r_phi = 0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      worst(r_phi, max_abs(endo_extend(rbar.op[i][j], g2.phi())));
  rep.add("canonical curvature annihilates the 3-form", r_phi, tol);

  return rep;
}

}  // namespace npg2
