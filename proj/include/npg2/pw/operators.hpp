#pragma once

#include <map>
#include <string>
#include <vector>

#include "npg2/homogeneous.hpp"
#include "npg2/pw/hom.hpp"

namespace npg2::pw {

/// Per-frame-index fiber symbols sigma(e_i), written on the parent fibers.
using Symbol7 = std::array<Eigen::MatrixXd, 7>;

// ---- fiber maps in flat parent coordinates ---------------------------------

/// e_i wedge : p-forms -> (p+1)-forms.
const Eigen::MatrixXd& wedge_map(int i, int p);
/// e_i hook : p-forms -> (p-1)-forms.
const Eigen::MatrixXd& hook_map(int i, int p);
/// Hodge star on p-forms.
const Eigen::MatrixXd& hodge_map(int p);
/// Clifford multiplication by e_i on spinors (8 x 8).
const Eigen::MatrixXd& clifford_map(int i);
/// Clifford multiplication by an arbitrary form (8 x 8).
Eigen::MatrixXd clifford_form_map(const Form<double>& u);
/// Natural extension A_{e_i *} of the frame cross products to a parent fiber.
const Eigen::MatrixXd& cross_ext_map(Parent p, int i);
/// A-tilde_{e_i} t = A_{e_i} t + t A_{e_i} on endomorphisms (49 x 49).
const Eigen::MatrixXd& cross_tilde_map(int i);
/// Torsion term C_i = nabla_i - nablabar_i on a parent fiber.
const Eigen::MatrixXd& torsion_map(Parent p, int i);
/// Curvature endomorphism q(R) of the chosen connection on a parent fiber.
const Eigen::MatrixXd& q_map(Parent p, CurvatureFlavor f);

/// h |-> -2 (sym0 part of h) star phi, endomorphisms into 3-forms (35 x 49).
const Eigen::MatrixXd& sym_to_three_map();
/// inverse of the above on the 27-dimensional image (49 x 35, zero elsewhere).
const Eigen::MatrixXd& three_to_sym_map();
/// zeta |-> sum_i e_i . zeta  (x) e_i, spinors into spinor-valued 1-forms.
const Eigen::MatrixXd& spin_embed_map();
/// H |-> (X |-> H(X) . kappa_0), endomorphisms into spinor-valued 1-forms.
const Eigen::MatrixXd& deformation_spinor_map();
/// 2-form coefficients of the skew part of an endomorphism (21 x 49).
const Eigen::MatrixXd& skew_to_form_map();
/// skew matrix of a 2-form (49 x 21).
const Eigen::MatrixXd& form_to_skew_map();
/// spinor-valued 1-form |-> inner products of its legs with kappa_0 (7 x 56).
const Eigen::MatrixXd& spin_tensor_scalar_part_map();

/// Projection of the parent fiber onto a sub-bundle, in parent coordinates.
Eigen::MatrixXd bundle_projector(Bundle b);

// ---- blockwise assembly ----------------------------------------------------

/// Matrix of A |-> sum_i sigma(e_i)(dbar_i A) + zeroth(A) between the Hom
/// blocks of src and tgt at weight w, where dbar_i A = -A rho_lambda(m(e_i)).
/// sigma(e_i) and zeroth map parent(src) -> parent(tgt); null means absent.
Eigen::MatrixXd assemble_first_order(const Weight& w, Bundle src, Bundle tgt,
                                     const Symbol7* symbol,
                                     const Eigen::MatrixXd* zeroth);

/// Connection Laplacian block (rough Laplacian of the chosen connection).
Eigen::MatrixXd rough_block(const Weight& w, Bundle b, CurvatureFlavor f);

/// Standard Laplacian block: rough Laplacian plus curvature endomorphism.
Eigen::MatrixXd laplace_block(const Weight& w, Bundle b, CurvatureFlavor f);

// ---- the named operator dictionary ----------------------------------------

struct BlockOp {
  Bundle src = Bundle::Functions;
  Bundle tgt = Bundle::Functions;
  Eigen::MatrixXd m;
};

using OpTable = std::map<std::string, BlockOp>;

/// All named operators at one weight:
///   d0..d3, delta1..delta4          exterior derivative / codifferential
///   star_d3                         *d on 3-forms
///   dirac                           Dirac operator on spinors
///   dirac_tm, dirac_tm_bar          twisted Dirac operators (both connections)
///   rarita                          twisted Dirac restricted to S32
///   penrose_corner                  spin-1/2 corner of dirac_tm
///   killing_spinor                  kappa |-> nabla kappa - (1/2)(.) . kappa
///   killing_one_form                f |-> nabla f + (2/3) f x (.)  (kernel D1)
///   div_sym                         divergence on trace-free symmetric tensors
///   sym_torsion                     H |-> 3 A_{e_i *} dbar_i H
///   deformation                     H |-> (dirac_tm - 7/2)(H(.) . kappa_0)
///   lap_<bundle>, glap_<bundle>     standard / canonical Laplacians
Eigen::MatrixXd standard_op(const Weight& w, const std::string& name);
const OpTable& standard_ops(const Weight& w);

// ---- identity suite ---------------------------------------------------------

struct CheckItem {
  std::string name;
  std::string anchor;  // report anchor string
  double residual = 0;
  bool pass = false;
};

/// Verifies every first- and second-order operator identity blockwise at one
/// weight; residuals are Frobenius norms of matrix differences.
std::vector<CheckItem> operator_identity_suite(const Weight& w, double tol);

}  // namespace npg2::pw
