#include <set>

#include "doctest.h"
#include "npg2/pw/irrep.hpp"
#include "npg2/pw/model.hpp"

using namespace npg2;
using namespace npg2::pw;

TEST_CASE("weight enumeration") {
  auto w0 = enumerate_weights(0);
  REQUIRE(w0.size() == 1);
  CHECK(w0[0] == Weight{0, 0, 0});

  auto w1 = enumerate_weights(1);
  REQUIRE(w1.size() == 4);
  CHECK(w1[0] == Weight{0, 0, 0});
  CHECK(w1[1] == Weight{0, 0, 1});
  CHECK(w1[2] == Weight{0, 1, 0});
  CHECK(w1[3] == Weight{1, 0, 0});

  auto w3 = enumerate_weights(3);
  CHECK(w3.size() == 20);
  CHECK(std::is_sorted(w3.begin(), w3.end()));
  std::set<Weight> uniq(w3.begin(), w3.end());
  CHECK(uniq.size() == 20);
}

TEST_CASE("dimension formula") {
  CHECK(weyl_dim({0, 0, 0}) == 1);
  CHECK(weyl_dim({1, 0, 0}) == 7);
  CHECK(weyl_dim({0, 1, 0}) == 21);
  CHECK(weyl_dim({0, 0, 1}) == 8);
  CHECK(weyl_dim({2, 0, 0}) == 27);
  CHECK(weyl_dim({0, 0, 2}) == 35);
  CHECK(weyl_dim({1, 0, 1}) == 48);
  CHECK(weyl_dim({0, 0, 3}) == 112);
  CHECK(weyl_dim({0, 3, 0}) == 825);
  CHECK(weyl_dim({1, 1, 1}) == 512);
}

TEST_CASE("casimir scalar") {
  CHECK(casimir_scalar({0, 0, 0}) == doctest::Approx(0.0));
  CHECK(casimir_scalar({1, 0, 0}) == doctest::Approx(6.0));
  CHECK(casimir_scalar({0, 1, 0}) == doctest::Approx(10.0));
  CHECK(casimir_scalar({0, 0, 1}) == doctest::Approx(21.0 / 4));
}

namespace {

// worst structural residual over random probes: skewness, brackets, Casimir
double probe_residual(const Irrep& rep) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-1, 1);
  auto random_skew = [&] {
    Endo<double> z;
    for (int i = 0; i < 7; ++i)
      for (int j = i + 1; j < 7; ++j) {
        z(i, j) = unif(rng);
        z(j, i) = -z(i, j);
      }
    return z;
  };
  double worst = 0;
  for (int k = 0; k < 21; ++k)
    worst = std::max(worst, (rep.gen[k] + rep.gen[k].transpose()).cwiseAbs().maxCoeff());
  const double cas = casimir_scalar(rep.weight);
  for (int t = 0; t < 3; ++t) {
    Eigen::VectorXd v =
        Eigen::VectorXd::NullaryExpr(rep.dim, [&](Eigen::Index) { return unif(rng); });
    auto z1 = random_skew(), z2 = random_skew();
    Eigen::MatrixXd r1 = rep.act(z1), r2 = rep.act(z2);
    Eigen::VectorXd lhs = r1 * (r2 * v) - r2 * (r1 * v);
    worst = std::max(worst,
                     (lhs - rep.act(z1 * z2 - z2 * z1) * v).cwiseAbs().maxCoeff());
    Eigen::VectorXd cv = Eigen::VectorXd::Zero(rep.dim);
    for (int k = 0; k < 21; ++k) cv += rep.gen[k] * (rep.gen[k] * v);
    worst = std::max(worst, (cv + cas * v).cwiseAbs().maxCoeff() / (1 + v.norm()));
  }
  return worst;
}

}  // namespace

TEST_CASE("basic irreps") {
  for (Weight w : {Weight{0, 0, 0}, Weight{1, 0, 0}, Weight{0, 1, 0}, Weight{0, 0, 1}}) {
    CAPTURE(w.a);
    CAPTURE(w.b);
    CAPTURE(w.c);
    Irrep rep = build_irrep(w);
    CHECK(rep.dim == weyl_dim(w));
    CHECK(probe_residual(rep) < 1e-10);
  }
}

TEST_CASE("trivial irrep is inert") {
  Irrep rep = build_irrep({0, 0, 0});
  for (int k = 0; k < 21; ++k) CHECK(rep.gen[k].cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("composite irreps close at the predicted dimension") {
  for (Weight w : {Weight{2, 0, 0}, Weight{1, 0, 1}, Weight{0, 1, 1}, Weight{0, 0, 2}}) {
    CAPTURE(w.a);
    CAPTURE(w.b);
    CAPTURE(w.c);
    Irrep rep = build_irrep(w);
    CHECK(rep.dim == weyl_dim(w));
    CHECK(probe_residual(rep) < 1e-9);
  }
}

TEST_CASE("tangent generators calibrate the vector irrep") {
  // in the defining irrep the tangent generator is the model matrix itself
  // the closure basis of the defining irrep is an orthogonal change of frame,
  // so the tangent generators keep their Frobenius norms
  Irrep rep = build_irrep({1, 0, 0});
  const auto& model = ModelData::get();
  for (int i = 0; i < 7; ++i) {
    CHECK((rep.tangent_gen(i) + rep.tangent_gen(i).transpose()).cwiseAbs().maxCoeff() <
          1e-12);
    double norm2 = 0;
    for (int r = 0; r < 7; ++r)
      for (int c = 0; c < 7; ++c) norm2 += model.m[i](r, c) * model.m[i](r, c);
    CHECK(rep.tangent_gen(i).norm() == doctest::Approx(std::sqrt(norm2)).epsilon(1e-9));
  }
}
