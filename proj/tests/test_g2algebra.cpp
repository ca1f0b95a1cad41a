#include "doctest.h"

#include "npg2/identities.hpp"

using namespace npg2;
using F = Form<Rat>;
using V = Vec7<Rat>;

namespace {

const G2Structure<Rat>& g2() { return G2Structure<Rat>::standard(); }

// rank of a list of forms over the rationals
int rank_of(std::vector<F> rows) {
  if (rows.empty()) return 0;
  int n = rows[0].size();
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
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
      for (int c = 0; c < n; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("standard structure coefficients") {
  CHECK(g2().phi().coeff({1, 2, 3}) == Rat(1));
  CHECK(g2().phi().coeff({3, 5, 6}) == Rat(-1)); // e^{653} is odd
  CHECK(g2().phi().coeff({1, 6, 7}) == Rat(-1)); // e^{176} is odd
  CHECK(g2().psi().coeff({2, 3, 4, 5}) == Rat(-1));
  CHECK(g2().psi().coeff({4, 5, 6, 7}) == Rat(1));
  CHECK(g2().tau0() == Rat(4));
  CHECK(g2().psi() == hodge(g2().phi()));
}

TEST_CASE("metric extraction from the 3-form") {
  auto g = metric_from_phi(g2().phi());
  REQUIRE(g.has_value());
  CHECK(*g == Endo<Rat>::identity());

  // cubic homogeneity of the defining relation
  auto g8 = metric_from_phi(Rat(8) * g2().phi());
  REQUIRE(g8.has_value());
  CHECK(*g8 == Rat(4) * Endo<Rat>::identity());

  CHECK_FALSE(metric_from_phi(F(3)).has_value());
}

TEST_CASE("cross product table and invariants") {
  CHECK((g2().cross(V::basis(0), V::basis(1)) - V::basis(2)).is_zero());
  CHECK((g2().cross(V::basis(0), V::basis(6)) - V::basis(5)).is_zero());

  Sampler s(11);
  for (int t = 0; t < 30; ++t) {
    V x = s.vector<Rat>(), y = s.vector<Rat>(), z = s.vector<Rat>();
    CHECK(g2().cross(x, x).is_zero());
    CHECK((g2().cross(x, y) + g2().cross(y, x)).is_zero());
    CHECK(is_zero(dot(g2().cross(y, z), y)));
    // bilinearity
    CHECK((g2().cross(x + y, z) - g2().cross(x, z) - g2().cross(y, z))
              .is_zero());
    // |A(X,Y)|^2 = |X|^2|Y|^2 - g(X,Y)^2
    V a = g2().cross(x, y);
    CHECK(dot(a, a) == dot(x, x) * dot(y, y) - dot(x, y) * dot(x, y));
  }
}

TEST_CASE("tangent valued 3-form chi") {
  // chi(e4,e5,e6): only psi(e7,e4,e5,e6) = -1 survives (cyclic shift of 4567)
  V c = g2().chi(V::basis(3), V::basis(4), V::basis(5));
  CHECK((c + Rat(2) * V::basis(6)).is_zero());

  Sampler s(12);
  for (int t = 0; t < 20; ++t) {
    V x = s.vector<Rat>(), y = s.vector<Rat>(), z = s.vector<Rat>();
    CHECK(g2().chi(x, x, z).is_zero());
    CHECK((g2().chi(x, y, z) + g2().chi(y, x, z)).is_zero());
    CHECK((g2().chi(x, y, z) + g2().chi(x, z, y)).is_zero());
  }
}

TEST_CASE("2-form split into 7 + 14 dimensional components") {
  // X . phi lands entirely in the first component
  F u = interior(V::basis(0), g2().phi());
  auto [p7, p14] = g2().project2(u);
  CHECK(p7 == u);
  CHECK(p14.is_zero());

  Sampler s(13);
  std::vector<F> im7, im14;
  for (int t = 0; t < 21; ++t) {
    F beta = s.form<Rat>(2);
    auto [b7, b14] = g2().project2(beta);
    CHECK(b7 + b14 == beta);
    CHECK(hodge(wedge(g2().phi(), b7)) == Rat(-2) * b7);
    CHECK(hodge(wedge(g2().phi(), b14)) == b14);
    CHECK(wedge(b14, g2().psi()).is_zero());
    im7.push_back(b7);
    im14.push_back(b14);
  }
  CHECK(rank_of(im7) == 7);
  CHECK(rank_of(im14) == 14);
}

TEST_CASE("3-form split into 1 + 7 + 27 dimensional components") {
  auto parts = g2().project3(g2().phi());
  CHECK(parts[0] == g2().phi());
  CHECK(parts[1].is_zero());
  CHECK(parts[2].is_zero());

  F b = interior(V::basis(0), g2().psi());
  auto pb = g2().project3(b);
  CHECK(pb[0].is_zero());
  CHECK(pb[1] == b);
  CHECK(pb[2].is_zero());

  Sampler s(14);
  std::vector<F> im1, im7, im27;
  for (int t = 0; t < 35; ++t) {
    F a = s.form<Rat>(3);
    auto p = g2().project3(a);
    CHECK(p[0] + p[1] + p[2] == a);
    CHECK(wedge(p[2], g2().phi()).is_zero());
    CHECK(wedge(p[2], g2().psi()).is_zero());
    // idempotent and mutually annihilating
    for (int i = 0; i < 3; ++i) {
      auto pp = g2().project3(p[i]);
      for (int j = 0; j < 3; ++j)
        CHECK(pp[j] == (i == j ? p[i] : F(3)));
    }
    // orthogonality
    CHECK(is_zero(form_inner(p[0], p[1])));
    CHECK(is_zero(form_inner(p[0], p[2])));
    CHECK(is_zero(form_inner(p[1], p[2])));
    im1.push_back(p[0]);
    im7.push_back(p[1]);
    im27.push_back(p[2]);
  }
  CHECK(rank_of(im1) == 1);
  CHECK(rank_of(im7) == 7);
  CHECK(rank_of(im27) == 27);

  // self-adjointness of the component maps
  Sampler s2(15);
  for (int t = 0; t < 10; ++t) {
    F a = s2.form<Rat>(3), b2 = s2.form<Rat>(3);
    auto pa = g2().project3(a), pb2 = g2().project3(b2);
    for (int i = 0; i < 3; ++i)
      CHECK(form_inner(pa[i], b2) == form_inner(a, pb2[i]));
  }
}

TEST_CASE("the maps between trace-free symmetric tensors and 3-forms") {
  CHECK(g2().jmap(g2().phi()) == Rat(-6) * Endo<Rat>::identity());
  CHECK(g2().jmap(F(3)).is_zero());
  CHECK(g2().imap(Endo<Rat>()).is_zero());

  Endo<Rat> bad;
  bad(0, 1) = 1;  // not symmetric
  CHECK_THROWS_AS(g2().imap(bad), std::invalid_argument);
  CHECK_THROWS_AS(g2().imap(Endo<Rat>::identity()), std::invalid_argument);

  Sampler s(16);
  std::vector<F> image;
  for (int t = 0; t < 50; ++t) {
    Endo<Rat> h = endo_split(s.endo<Rat>()).sym0;
    F gamma = g2().imap(h);
    CHECK(wedge(gamma, g2().phi()).is_zero());
    CHECK(wedge(gamma, g2().psi()).is_zero());
    CHECK(g2().jmap(gamma) == Rat(-8) * h);
    image.push_back(gamma);
  }
  CHECK(rank_of(image) == 27);
}

TEST_CASE("sign-twisted extension of the cross product") {
  // e2 (x) e3: A(e1,e2) = e3, A(e1,e3) = -e2
  Endo<Rat> t;
  t(1, 2) = 1;
  Endo<Rat> expect;
  expect(2, 2) = 1;
  expect(1, 1) = 1;
  CHECK(tilde_extend(g2(), V::basis(0), t) == expect);

  // the twisted extension doubles A_X on the metric; the plain derivation
  // kills it
  CHECK(tilde_extend(g2(), V::basis(0), Endo<Rat>::identity()) ==
        Rat(2) * g2().cross_endo(0));
  CHECK(cross_star2(g2(), V::basis(0), Endo<Rat>::identity()).is_zero());

  Sampler s(17);
  for (int m = 0; m < 10; ++m) {
    V x = s.vector<Rat>(), y = s.vector<Rat>();
    Endo<Rat> a = s.endo<Rat>(), b = s.endo<Rat>();
    CHECK(tilde_extend(g2(), x, a + b) ==
          tilde_extend(g2(), x, a) + tilde_extend(g2(), x, b));
    CHECK(tilde_extend(g2(), x + y, a) ==
          tilde_extend(g2(), x, a) + tilde_extend(g2(), y, a));
    // brute force against the rank-one definition
    Endo<Rat> brute;
    Endo<Rat> ax = cross_endo_of(g2(), x);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        // a = sum a(i,j) e_i (x) e_j
        V u = ax.apply(V::basis(i)), v = ax.apply(V::basis(j));
        for (int k = 0; k < 7; ++k) {
          brute(k, j) += a(i, j) * u[k];
          brute(i, k) -= a(i, j) * v[k];
        }
      }
    CHECK(tilde_extend(g2(), x, a) == brute);
  }
}

TEST_CASE("identity suite is exact on the rational backend") {
  CheckReport rep = identity_suite<Rat>(2026, 100);
  CHECK(rep.items.size() == 11);
  for (const auto& item : rep.items) {
    INFO(item.name);
    CHECK(item.pass);
    CHECK(item.residual == 0.0);
  }
}

TEST_CASE("identity suite on the floating backend") {
  CheckReport rep = identity_suite<double>(2026, 100, 1e-8);
  for (const auto& item : rep.items) {
    INFO(item.name);
    CHECK(item.pass);
  }
}

TEST_CASE("pinned single-input identity examples") {
  // A_{e1*} phi = 3 e1 . psi
  Endo<Rat> a1 = g2().cross_endo(0);
  CHECK(endo_extend(a1, g2().phi()) ==
        Rat(3) * interior(V::basis(0), g2().psi()));

  // w* phi = 0 for a specific projected w
  Sampler s(18);
  F w = g2().project2(s.form<Rat>(2)).second;
  CHECK(endo_extend(skew_endo_from_form(w), g2().phi()).is_zero());

  // basis instance of the cross composition identity
  for (int k = 0; k < 7; ++k) {
    V z = V::basis(k);
    V lhs = g2().cross(V::basis(0), g2().cross(V::basis(1), z));
    V rhs = z[0] * V::basis(1);  // g(e1,e2) = 0 kills the first term
    V half_chi = g2().chi(V::basis(0), V::basis(1), z);
    for (int i = 0; i < 7; ++i) rhs[i] -= half_chi[i] / Rat(2);
    CHECK((lhs - rhs).is_zero());
  }
}
