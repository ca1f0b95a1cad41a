#pragma once

#include <algorithm>

#include "npg2/g2.hpp"
#include "npg2/report.hpp"
#include "npg2/rng.hpp"

namespace npg2 {

/// 2-form viewed as the skew matrix W(i,j) = w(e_i, e_j).
template <class T>
Endo<T> skew_endo_from_form(const Form<T>& w) {
  assert(w.degree() == 2);
  Endo<T> out;
  const auto& masks = combi::masks_by_degree()[2];
  for (int k = 0; k < static_cast<int>(masks.size()); ++k) {
    int i = __builtin_ctz(masks[k]);
    int j = __builtin_ctz(uint8_t(masks[k] & (masks[k] - 1)));
    out(i, j) = w[k];
    out(j, i) = -w[k];
  }
  return out;
}

/// A_X as a matrix: sum of the memoized frame cross endomorphisms.
template <class T>
Endo<T> cross_endo_of(const G2Structure<T>& g2, const Vec7<T>& x) {
  Endo<T> ax;
  for (int j = 0; j < 7; ++j) {
    if (npg2::is_zero(x[j])) continue;
    ax += x[j] * g2.cross_endo(j);
  }
  return ax;
}

/// Pointwise identity suite for the cross-product/form calculus. Evaluates
/// each identity on `trials` seeded random inputs; constrained inputs are
/// produced by exact projection (w from the 14-dimensional 2-form component,
/// H trace-free symmetric, gamma from the 27-dimensional 3-form component).
/// On the rational backend every residual must be exactly zero.
template <class T>
CheckReport identity_suite(uint64_t seed, int trials, double tol = 0.0) {
  const auto& g2 = G2Structure<T>::standard();
  const Form<T>& phi = g2.phi();
  const Form<T>& psi = g2.psi();
  using V = Vec7<T>;

  CheckReport rep;
  auto worst = [](double& acc, double r) { acc = std::max(acc, r); };

  double r_cross_chi = 0, r_double_cross = 0, r_contract = 0, r_dual = 0;
  double r_sym_star = 0, r_cross_phi = 0, r_w14 = 0;
  double r_sum_wedge = 0, r_sum_hook_w = 0, r_sum_sym = 0, r_sum_hook_g = 0;

  Sampler base(seed);
  for (int t = 0; t < trials; ++t) {
    Sampler s = base.fork(uint64_t(t));
    V x = s.vector<T>(), y = s.vector<T>(), z = s.vector<T>();
    Form<T> xf = x.as_form(), yf = y.as_form();

    // A_X A_Y Z = -g(X,Y)Z + g(X,Z)Y - (1/2) chi(X,Y,Z)
    {
      V lhs = g2.cross(x, g2.cross(y, z));
      V rhs = -dot(x, y) * z + dot(x, z) * y;
      V half_chi = g2.chi(x, y, z);
      for (int i = 0; i < 7; ++i) rhs[i] -= half_chi[i] / T(2);
      worst(r_cross_chi, max_abs(lhs - rhs));
    }
    // 2 A_{A_X Y} Z = A_{A_Y Z} X + A_{A_Z X} Y + 3g(X,Z)Y - 3g(Y,Z)X
    {
      V lhs = T(2) * g2.cross(g2.cross(x, y), z);
      V rhs = g2.cross(g2.cross(y, z), x) + g2.cross(g2.cross(z, x), y) +
              T(3) * dot(x, z) * y - T(3) * dot(y, z) * x;
      worst(r_double_cross, max_abs(lhs - rhs));
    }
    // (X . Y . phi) . phi + X . Y . psi = -X ^ Y
    {
      Form<T> u = interior(x, interior(y, phi));
      Form<T> lhs = interior(V::from_form(u), phi) + interior(x, interior(y, psi));
      worst(r_contract, max_abs(lhs + wedge(xf, yf)));
    }
    // phi ^ X ^ Y = *(Y . X . psi)
    {
      Form<T> lhs = wedge(phi, wedge(xf, yf));
      Form<T> rhs = hodge(interior(y, interior(x, psi)));
      worst(r_dual, max_abs(lhs - rhs));
    }

    Endo<T> h = endo_split(s.endo<T>()).sym0;
    Form<T> w = g2.project2(s.form<T>(2)).second;
    Form<T> gamma = g2.project3(s.form<T>(3))[2];
    Endo<T> w_endo = skew_endo_from_form(w);
    Endo<T> ax = cross_endo_of(g2, x);

    // *(H* phi) = -H* psi and *(H* psi) = -H* phi
    {
      Form<T> hphi = endo_extend(h, phi), hpsi = endo_extend(h, psi);
      worst(r_sym_star, max_abs(hodge(hphi) + hpsi));
      worst(r_sym_star, max_abs(hodge(hpsi) + hphi));
    }
    // A_{X*} phi = 3 X . psi and A_{X*} psi = -3 X ^ phi
    {
      worst(r_cross_phi, max_abs(endo_extend(ax, phi) - T(3) * interior(x, psi)));
      worst(r_cross_phi, max_abs(endo_extend(ax, psi) + T(3) * wedge(xf, phi)));
    }
    // w* phi = 0 for w in the 14-dimensional component
    worst(r_w14, max_abs(endo_extend(w_endo, phi)));

    // frame-summed contractions that vanish by irreducibility
    {
      Form<T> sum_wedge(3);
      Form<T> sum_hook_w(1);
      Form<T> sum_hook_g(2);
      V sum_sym;
      for (int i = 0; i < 7; ++i) {
        const Endo<T>& ai = g2.cross_endo(i);
        V ei = V::basis(i);
        Form<T> aw = endo_extend(ai, w);
        sum_wedge += wedge(ei.as_form(), aw);
        sum_hook_w += interior(ei, aw);
        sum_hook_g += interior(ei, endo_extend(ai, gamma));
        sum_sym += (ai * h - h * ai).apply(ei);
      }
      worst(r_sum_wedge, max_abs(sum_wedge));
      worst(r_sum_hook_w, max_abs(sum_hook_w));
      worst(r_sum_sym, max_abs(sum_sym));
      worst(r_sum_hook_g, max_abs(sum_hook_g));
    }
  }

  rep.add("cross composition vs chi", r_cross_chi, tol);
  rep.add("double cross symmetrization", r_double_cross, tol);
  rep.add("iterated contraction of phi", r_contract, tol);
  rep.add("phi wedge pair vs dual contraction", r_dual, tol);
  rep.add("sym action anticommutes with star on phi/psi", r_sym_star, tol);
  rep.add("cross action on phi and psi", r_cross_phi, tol);
  rep.add("14-dim 2-form component annihilates phi", r_w14, tol);
  rep.add("frame sum: wedge of cross action on w", r_sum_wedge, tol);
  rep.add("frame sum: hook of cross action on w", r_sum_hook_w, tol);
  rep.add("frame sum: cross action on H applied to frame", r_sum_sym, tol);
  rep.add("frame sum: hook of cross action on gamma", r_sum_hook_g, tol);
  return rep;
}

}  // namespace npg2
