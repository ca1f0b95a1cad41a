#pragma once

#include "npg2/pw/operators.hpp"

namespace npg2::pw {

/// Number of singular values of (op - shift I) below tol times the largest
/// one. Singular values inside the guard band [tol, 10 tol) times the largest
/// leave the rank undecided and raise std::runtime_error.
int kernel_dim(const Eigen::MatrixXd& op, double shift, double tol);

/// Orthonormal kernel basis under the same thresholding contract.
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& op, double shift, double tol);

/// Distinct eigenvalues of a symmetric matrix with multiplicities, clustered
/// at absolute resolution tol.
std::vector<std::pair<double, int>> clustered_spectrum(const Eigen::MatrixXd& sym,
                                                       double tol);

/// Per-weight kernel dimensions of the distinguished operators. All counts
/// are block multiplicities; section dimensions scale by the irrep dimension.
struct WeightReport {
  Weight w;
  long rep_dim = 0;
  int killing = 0;   // Killing spinors with constant +1/2
  int d1 = 0;        // Killing 1-forms
  int d3 = 0;        // *d = -4 on the constrained 27-type three-forms
  int rgamma = 0;    // *d = -1/2 on the same space
  int ker_q = 0;     // Rarita-Schwinger fields
  int rh = 0;        // symmetric-tensor form of the Rarita-Schwinger space
  std::vector<double> stard_spectrum;  // *d on the constrained block
  std::vector<CheckItem> checks;       // per-weight cross-checks
};

struct SpectralReport {
  int max_level = 3;
  double tol = 1e-6;
  std::vector<WeightReport> rows;
  // totals as section dimensions (block multiplicity times irrep dimension)
  long total_killing = 0, total_d1 = 0, total_d3 = 0, total_rgamma = 0,
       total_ker_q = 0, total_rh = 0;
};

SpectralReport spectral_report(int max_level, double tol);

/// Blockwise certification of one of the two main statements ('A' or 'B').
std::vector<CheckItem> theorem_check(char which, int max_level, double tol);

/// Linear-instability certificate: the conjugated-Laplacian identity per
/// block, the eigenvalue arithmetic, and the witness search.
std::vector<CheckItem> instability_certificate(int max_level, double tol);

}  // namespace npg2::pw
