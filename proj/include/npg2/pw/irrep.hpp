#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "npg2/form.hpp"

namespace npg2::pw {

/// Dominant weight of the rank-3 odd orthogonal algebra in the
/// fundamental-weight basis.
struct Weight {
  int a = 0, b = 0, c = 0;
  friend bool operator==(const Weight& x, const Weight& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c;
  }
  friend bool operator<(const Weight& x, const Weight& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
  }
  int level() const { return a + b + c; }
};

/// All dominant weights with level <= maxLevel, sorted lexicographically.
std::vector<Weight> enumerate_weights(int max_level);

/// Weyl dimension formula.
long weyl_dim(const Weight& w);

/// <lambda, lambda + 2 rho> in the orthogonal-coordinate normalization where
/// the 21 elementary rotation generators are the standard basis; the Casimir
/// sum of squared generator images acts as minus this scalar.
double casimir_scalar(const Weight& w);

/// Explicit orthogonal realization of one irreducible representation:
/// the images of the elementary rotations G_ab (a<b, 2-form mask order).
struct Irrep {
  Weight weight;
  int dim = 0;
  double casimir = 0;  // scalar by which the quadratic Casimir acts
  std::array<Eigen::MatrixXd, 21> gen;
  Eigen::VectorXcd top;  // coordinates of the top weight vector

  /// image of an arbitrary skew matrix
  Eigen::MatrixXd act(const Endo<double>& z) const;
  /// image of the tangent generator m(e_i) of the reductive model
  const Eigen::MatrixXd& tangent_gen(int i) const { return tangent_[i]; }

  std::array<Eigen::MatrixXd, 7> tangent_;  // filled by build_irrep
};

/// Construct the irrep inside a tensor product of the basic representations
/// (vector, rotation, spin) as the cyclic span of the top weight line.
/// Throws if the closure dimension disagrees with the Weyl formula or any
/// structural check (skewness, brackets, scalar Casimir) fails.
Irrep build_irrep(const Weight& w);

/// Memoized access; irreps are expensive to construct and freely shared.
const Irrep& get_irrep(const Weight& w);

}  // namespace npg2::pw
