#include <stdexcept>

#include "doctest.h"
#include "npg2/pw/operators.hpp"
#include "npg2/pw/spectral.hpp"

using namespace npg2;
using namespace npg2::pw;

namespace {
constexpr double kTol = 1e-10;
}

TEST_CASE("function Laplacian on the lowest spherical harmonics") {
  // The 8-dimensional level-1 harmonics carry eigenvalue 7.
  Eigen::MatrixXd lap = standard_op({0, 0, 1}, "lap_functions");
  REQUIRE(lap.rows() == 1);
  CHECK(lap(0, 0) == doctest::Approx(7.0).epsilon(1e-12));

  // Across all level-1 weights that is the full multiplicity-8 eigenspace.
  long mult7 = 0;
  for (const auto& w : enumerate_weights(1)) {
    Eigen::MatrixXd l = standard_op(w, "lap_functions");
    for (auto [ev, m] : clustered_spectrum(l, 1e-8))
      if (std::abs(ev - 7.0) < 1e-8) mult7 += m * weyl_dim(w);
  }
  CHECK(mult7 == 8);
}

TEST_CASE("Dirac operator on the invariant spinor") {
  Eigen::MatrixXd d = standard_op({0, 0, 0}, "dirac");
  REQUIRE(d.rows() == 1);
  CHECK(d(0, 0) == doctest::Approx(-3.5).epsilon(1e-12));

  // Next weight: the two spinor blocks see -9/2 and +7/2.
  Eigen::MatrixXd d1 = standard_op({0, 0, 1}, "dirac");
  auto spec = clustered_spectrum(0.5 * (d1 + d1.transpose()), 1e-8);
  REQUIRE(spec.size() == 2);
  CHECK(spec[0].first == doctest::Approx(-4.5).epsilon(1e-10));
  CHECK(spec[1].first == doctest::Approx(3.5).epsilon(1e-10));
}

TEST_CASE("codifferentials are adjoint to exterior derivatives") {
  for (const Weight& w : {Weight{0, 0, 1}, Weight{1, 0, 0}}) {
    for (int p = 0; p < 4; ++p) {
      Eigen::MatrixXd d = standard_op(w, "d" + std::to_string(p));
      Eigen::MatrixXd del = standard_op(w, "delta" + std::to_string(p + 1));
      CHECK((del - d.transpose()).norm() < kTol);
    }
  }
}

TEST_CASE("twisted Dirac operators are symmetric") {
  for (const char* name : {"dirac", "dirac_tm", "rarita"}) {
    Eigen::MatrixXd m = standard_op({0, 0, 1}, name);
    CHECK((m - m.transpose()).norm() < kTol);
  }
}

TEST_CASE("operator identities hold blockwise") {
  for (const Weight& w : {Weight{0, 0, 1}, Weight{1, 0, 0}, Weight{0, 1, 0}}) {
    auto items = operator_identity_suite(w, 1e-8);
    CHECK(!items.empty());
    for (const auto& it : items) {
      INFO(it.name, " at weight level ", w.a + w.b + w.c);
      CHECK(it.pass);
      CHECK(it.residual < 1e-8);
      CHECK(!it.anchor.empty());
    }
  }
}

TEST_CASE("Killing kernels sit at the expected weights") {
  CHECK(kernel_dim(standard_op({0, 0, 0}, "killing_spinor"), 0.0, 1e-6) == 1);
  CHECK(kernel_dim(standard_op({1, 0, 0}, "killing_spinor"), 0.0, 1e-6) == 1);
  CHECK(kernel_dim(standard_op({0, 0, 1}, "killing_spinor"), 0.0, 1e-6) == 0);

  CHECK(kernel_dim(standard_op({1, 0, 0}, "killing_one_form"), 0.0, 1e-6) == 1);
  CHECK(kernel_dim(standard_op({0, 0, 1}, "killing_one_form"), 0.0, 1e-6) == 0);
}

TEST_CASE("kernel_dim guard band") {
  Eigen::MatrixXd m = Eigen::Vector2d(1.0, 5e-6).asDiagonal();
  CHECK_THROWS_AS(kernel_dim(m, 0.0, 1e-6), std::runtime_error);

  // Clearly separated singular values are decided without complaint.
  m(1, 1) = 1e-9;
  CHECK(kernel_dim(m, 0.0, 1e-6) == 1);
  CHECK(kernel_dim(m, 1.0, 1e-6) == 1);

  // An exactly-zero block is a full kernel, not an empty one.
  CHECK(kernel_dim(Eigen::MatrixXd::Zero(3, 2), 0.0, 1e-6) == 2);
}

TEST_CASE("standard operator table is consistent") {
  const auto& ops = standard_ops({0, 0, 1});
  for (const char* name : {"d0", "delta1", "star_d3", "dirac", "dirac_tm",
                           "rarita", "killing_spinor", "deformation",
                           "lap_functions", "glap_spin_tensors"}) {
    auto it = ops.find(name);
    REQUIRE(it != ops.end());
    CHECK(it->second.m.rows() == hom_dim({0, 0, 1}, it->second.tgt));
    CHECK(it->second.m.cols() == hom_dim({0, 0, 1}, it->second.src));
  }
}
