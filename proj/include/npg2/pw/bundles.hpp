#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "npg2/form.hpp"
#include "npg2/pw/irrep.hpp"
#include "npg2/spinor.hpp"

namespace npg2::pw {

/// Full fiber spaces the sub-bundles live in.
enum class Parent {
  Functions,
  OneForms,
  TwoForms,
  ThreeForms,
  FourForms,
  Tensor2,
  Spinors,
  SpinTensors,
};

/// Associated bundles handled by the spectral layer. The first four double as
/// the model fibers of the isotropy decomposition (trivial, 7, 14, 27).
enum class Bundle {
  Functions,
  OneForms,
  TwoForms14,
  Sym0,
  TwoForms,
  TwoForms7,
  ThreeForms,
  ThreeForms27,
  FourForms,
  Tensor2,
  Spinors,
  SpinTensors,
  S32,
};

constexpr std::array<Bundle, 4> kModelFibers = {Bundle::Functions, Bundle::OneForms,
                                                Bundle::TwoForms14, Bundle::Sym0};

const char* bundle_name(Bundle b);

struct Summand {
  Bundle model;          // one of the four model fibers
  Eigen::MatrixXd iso;   // equivariant isometry, parent_dim x model_dim
};

struct ParentData {
  int dim = 0;
  std::array<Eigen::MatrixXd, 21> gen;   // images of the elementary rotations
  std::array<Eigen::MatrixXd, 14> stab;  // images of the orthonormal stabilizer basis
  std::vector<Summand> summands;         // isotypic decomposition

  Eigen::MatrixXd act(const Endo<double>& z) const;
};

const ParentData& parent_data(Parent p);

Parent parent_of(Bundle b);
int bundle_dim(Bundle b);

/// Orthonormal inclusion of the bundle fiber into its parent fiber
/// (parent_dim x bundle_dim; identity for full parents).
const Eigen::MatrixXd& bundle_incl(Bundle b);

/// Stabilizer images on the bundle fiber itself.
const std::array<Eigen::MatrixXd, 14>& bundle_stab(Bundle b);

// ---- flat coordinates on the parent fibers ---------------------------------

inline Eigen::VectorXd flat(const Form<double>& u) {
  Eigen::VectorXd v(u.size());
  for (int i = 0; i < u.size(); ++i) v[i] = u[i];
  return v;
}
inline Form<double> unflat_form(int degree, const Eigen::VectorXd& v) {
  Form<double> u(degree);
  for (int i = 0; i < u.size(); ++i) u[i] = v[i];
  return u;
}
// endomorphism entry (i, j) at flat index 7 j + i
inline Eigen::VectorXd flat(const Endo<double>& t) {
  Eigen::VectorXd v(49);
  for (int j = 0; j < 7; ++j)
    for (int i = 0; i < 7; ++i) v[7 * j + i] = t(i, j);
  return v;
}
inline Endo<double> unflat_endo(const Eigen::VectorXd& v) {
  Endo<double> t;
  for (int j = 0; j < 7; ++j)
    for (int i = 0; i < 7; ++i) t(i, j) = v[7 * j + i];
  return t;
}
inline Eigen::VectorXd flat(const Spinor<double>& s) {
  Eigen::VectorXd v(8);
  v[0] = s.f;
  for (int i = 0; i < 7; ++i) v[i + 1] = s.alpha[i];
  return v;
}
inline Spinor<double> unflat_spinor(const Eigen::VectorXd& v) {
  Spinor<double> s;
  s.f = v[0];
  for (int i = 0; i < 7; ++i) s.alpha[i] = v[i + 1];
  return s;
}
// column i of a spinor-valued 1-form occupies flat indices [8 i, 8 i + 8)
inline Eigen::VectorXd flat(const SpinTensor<double>& t) {
  Eigen::VectorXd v(56);
  for (int i = 0; i < 7; ++i) v.segment(8 * i, 8) = flat(t[i]);
  return v;
}
inline SpinTensor<double> unflat_spin_tensor(const Eigen::VectorXd& v) {
  SpinTensor<double> t;
  for (int i = 0; i < 7; ++i) t[i] = unflat_spinor(v.segment(8 * i, 8));
  return t;
}

}  // namespace npg2::pw
