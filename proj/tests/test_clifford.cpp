#include "doctest.h"

#include "npg2/spinor.hpp"

using namespace npg2;
using S = Spinor<Rat>;
using V = Vec7<Rat>;
using F = Form<Rat>;

namespace {

const G2Structure<Rat>& g2() { return G2Structure<Rat>::standard(); }

S sample_spinor(Sampler& s) {
  S z;
  z.f = Rat(s.coeff());
  z.alpha = s.vector<Rat>();
  return z;
}

SpinTensor<Rat> sample_spin_tensor(Sampler& s) {
  SpinTensor<Rat> t;
  for (int i = 0; i < 7; ++i) t[i] = sample_spinor(s);
  return t;
}

// coordinates of a spin tensor as a flat 56-vector, for rank computations
std::array<Rat, 56> flat(const SpinTensor<Rat>& t) {
  std::array<Rat, 56> out;
  for (int i = 0; i < 7; ++i) {
    out[8 * i] = t[i].f;
    for (int k = 0; k < 7; ++k) out[8 * i + 1 + k] = t[i].alpha[k];
  }
  return out;
}

int rank_of(std::vector<std::array<Rat, 56>> rows) {
  int rank = 0;
  for (int col = 0; col < 56 && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (!is_zero(rows[r][col])) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || is_zero(rows[r][col])) continue;
      Rat f = rows[r][col] / rows[rank][col];
      for (int c = 0; c < 56; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("vector action basics") {
  S k0 = S::kappa0();
  CHECK(clifford_vector(g2(), V::basis(0), k0) == S{Rat(0), V::basis(0)});
  CHECK(clifford_vector(g2(), V::basis(0), S{Rat(0), V::basis(0)}) ==
        S{Rat(-1), V()});
  CHECK(clifford_vector(g2(), V::basis(0), S{Rat(0), V::basis(1)}) ==
        S{Rat(0), V::basis(2)});
}

TEST_CASE("Clifford relation and skew-adjointness") {
  Sampler s(21);
  for (int t = 0; t < 50; ++t) {
    V x = s.vector<Rat>(), y = s.vector<Rat>();
    S a = sample_spinor(s), b = sample_spinor(s);
    S anti = clifford_vector(g2(), x, clifford_vector(g2(), y, a)) +
             clifford_vector(g2(), y, clifford_vector(g2(), x, a));
    CHECK(anti == Rat(-2) * dot(x, y) * a);
    CHECK(is_zero(spin_inner(clifford_vector(g2(), x, a), b) +
                  spin_inner(a, clifford_vector(g2(), x, b))));
  }
}

TEST_CASE("form action composition order") {
  F e12(2);
  e12.at_mask(0b11) = 1;
  CHECK(clifford_form(g2(), e12, S::kappa0()) == S{Rat(0), V::basis(2)});

  // linearity and monomial composition against brute force
  Sampler s(22);
  for (int t = 0; t < 10; ++t) {
    F u = s.form<Rat>(3);
    S z = sample_spinor(s);
    S brute;
    const auto& masks = combi::masks_by_degree()[3];
    for (int k = 0; k < static_cast<int>(masks.size()); ++k) {
      std::vector<int> idx;
      for (int i = 0; i < 7; ++i)
        if (masks[k] & (1 << i)) idx.push_back(i);
      S cur = z;
      for (int j = 2; j >= 0; --j)
        cur = clifford_vector(g2(), V::basis(idx[j]), cur);
      brute += u[k] * cur;
    }
    CHECK(clifford_form(g2(), u, z) == brute);
  }
}

TEST_CASE("eigenvalues of the structure forms") {
  S k0 = S::kappa0();
  CHECK(clifford_form(g2(), g2().psi(), k0) == Rat(7) * k0);
  CHECK(clifford_form(g2(), g2().phi(), k0) == Rat(-7) * k0);  // regression

  Sampler s(23);
  for (int t = 0; t < 20; ++t) {
    S z{Rat(0), s.vector<Rat>()};
    CHECK(clifford_form(g2(), g2().psi(), z) == -z);
    CHECK(clifford_form(g2(), g2().phi(), z) == z);
  }
}

TEST_CASE("volume element acts as a scalar") {
  F vol(7);
  vol.at_mask(0x7f) = 1;
  Sampler s(24);
  for (int t = 0; t < 20; ++t) {
    S z = sample_spinor(s);
    CHECK(clifford_form(g2(), vol, z) == -z);  // regression constant -1
  }
}

TEST_CASE("spin representation of skew endomorphisms") {
  Sampler s(25);
  for (int t = 0; t < 15; ++t) {
    Endo<Rat> b = endo_split(s.endo<Rat>()).skew;
    Endo<Rat> c = endo_split(s.endo<Rat>()).skew;
    S z = sample_spinor(s);
    // Lie algebra homomorphism
    S lhs = spin_rep(g2(), b * c - c * b, z);
    S rhs = spin_rep(g2(), b, spin_rep(g2(), c, z)) -
            spin_rep(g2(), c, spin_rep(g2(), b, z));
    CHECK(lhs == rhs);
    // compatibility with the vector action
    V x = s.vector<Rat>();
    S left = spin_rep(g2(), b, clifford_vector(g2(), x, z));
    S right = clifford_vector(g2(), b.apply(x), z) +
              clifford_vector(g2(), x, spin_rep(g2(), b, z));
    CHECK(left == right);
  }
}

TEST_CASE("blockwise split of spin tensors") {
  // f-part only in column 1
  SpinTensor<Rat> t;
  t[0] = S::kappa0();
  auto p = decompose_spin_tensor(g2(), t);
  CHECK((p.lambda1 - V::basis(0)).is_zero());
  CHECK(p.w7.is_zero());
  CHECK(p.w14.is_zero());
  CHECK(p.sym0.is_zero());
  CHECK(is_zero(p.trace));

  // pure trace pattern
  SpinTensor<Rat> tr;
  for (int i = 0; i < 7; ++i) tr[i] = S{Rat(0), V::basis(i)};
  auto pt = decompose_spin_tensor(g2(), tr);
  CHECK(pt.trace == Rat(7));
  CHECK(pt.lambda1.is_zero());
  CHECK(pt.sym0.is_zero());
  CHECK(pt.w7.is_zero());
  CHECK(pt.w14.is_zero());

  Sampler s(26);
  for (int t2 = 0; t2 < 20; ++t2) {
    // the symmetric-column pattern recovers H exactly
    Endo<Rat> h = endo_split(s.endo<Rat>()).sym0;
    auto ph = decompose_spin_tensor(g2(), psi_from_endo(g2(), h, S::kappa0()));
    CHECK(ph.sym0 == h);
    CHECK(ph.lambda1.is_zero());
    CHECK(ph.w7.is_zero());
    CHECK(ph.w14.is_zero());
    CHECK(is_zero(ph.trace));

    // exact recomposition of arbitrary elements
    SpinTensor<Rat> r = sample_spin_tensor(s);
    CHECK(recompose_spin_tensor(g2(), decompose_spin_tensor(g2(), r)) == r);
  }
}

TEST_CASE("projection onto the contraction kernel") {
  Sampler s(27);
  for (int t = 0; t < 20; ++t) {
    SpinTensor<Rat> r = sample_spin_tensor(s);
    SpinTensor<Rat> p = s32_project(g2(), r);
    CHECK(spin_tensor_contract(g2(), p).is_zero());
    CHECK(s32_project(g2(), p) == p);
    // orthogonality of the removed part
    CHECK(is_zero(spin_inner(p, r - p)));
    // membership conditions: trace of the alpha-block vanishes and the
    // f-parts balance the cross terms
    auto parts = decompose_spin_tensor(g2(), p);
    CHECK(is_zero(parts.trace));
    V bal;
    for (int i = 0; i < 7; ++i)
      bal += p[i].f * V::basis(i) + g2().cross(V::basis(i), p[i].alpha);
    CHECK(bal.is_zero());
  }

  // the symmetric pattern is already in the kernel
  Endo<Rat> h = endo_split(Sampler(28).endo<Rat>()).sym0;
  SpinTensor<Rat> psi_h = psi_from_endo(g2(), h, S::kappa0());
  CHECK(s32_project(g2(), psi_h) == psi_h);

  // a rank-one pattern loses only its contraction component
  SpinTensor<Rat> k1;
  k1[0] = S::kappa0();
  CHECK(spin_tensor_contract(g2(), s32_project(g2(), k1)).is_zero());
}

TEST_CASE("projector rank is 48") {
  std::vector<std::array<Rat, 56>> rows;
  for (int i = 0; i < 7; ++i)
    for (int b = 0; b < 8; ++b) {
      SpinTensor<Rat> t;
      if (b == 0)
        t[i].f = 1;
      else
        t[i].alpha = V::basis(b - 1);
      rows.push_back(flat(s32_project(g2(), t)));
    }
  CHECK(rank_of(rows) == 48);
}

TEST_CASE("projection commutes with the lifted cross action") {
  Sampler s(29);
  for (int t = 0; t < 10; ++t) {
    SpinTensor<Rat> r = sample_spin_tensor(s);
    for (int j = 0; j < 7; ++j) {
      const Endo<Rat>& aj = g2().cross_endo(j);
      auto lift = [&](const SpinTensor<Rat>& u) {
        SpinTensor<Rat> out;
        for (int i = 0; i < 7; ++i) {
          out[i] += spin_rep(g2(), aj, u[i]);
          V aei = aj.apply(V::basis(i));
          for (int k = 0; k < 7; ++k) out[k] += aei[k] * u[i];
        }
        return out;
      };
      CHECK(s32_project(g2(), lift(r)) == lift(s32_project(g2(), r)));
    }
  }
}
