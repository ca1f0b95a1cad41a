#pragma once

#include <vector>

#include "npg2/pw/bundles.hpp"
#include "npg2/pw/irrep.hpp"

namespace npg2::pw {

/// Orthonormal basis of the space of equivariant maps from one irrep into a
/// bundle fiber. Elements are written in bundle coordinates
/// (bundle_dim x irrep dim) and are orthonormal for the Frobenius product.
struct HomBlock {
  Weight w;
  Bundle b = Bundle::Functions;
  std::vector<Eigen::MatrixXd> elems;

  int size() const { return int(elems.size()); }
};

const HomBlock& hom_space(const Weight& w, Bundle b);

inline int hom_dim(const Weight& w, Bundle b) { return hom_space(w, b).size(); }

/// Stabilizer images of the irrep (cached alongside its Casimir eigenbasis).
struct IsotypicData {
  std::array<Eigen::MatrixXd, 14> stab;  // images of the orthonormal stabilizer basis
  Eigen::VectorXd evals;                 // Casimir eigenvalues (ascending)
  Eigen::MatrixXd evecs;
};
const IsotypicData& isotypic_data(const Weight& w);

/// Casimir scalar of a model fiber (a nonpositive number; distinct across the
/// four fiber types).
double fiber_casimir(Bundle model);

}  // namespace npg2::pw
