#include "npg2/pw/bundles.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <map>
#include <stdexcept>

#include "npg2/combinatorics.hpp"
#include "npg2/g2.hpp"
#include "npg2/identities.hpp"
#include "npg2/pw/model.hpp"

namespace npg2::pw {

namespace {

const G2Structure<double>& g2() { return G2Structure<double>::standard(); }

// matrix of a linear fiber map given its action on flat basis vectors
template <class F>
Eigen::MatrixXd matrix_of(int rows, int cols, F&& apply) {
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(cols);
    e[j] = 1;
    m.col(j) = apply(e);
  }
  return m;
}

Eigen::MatrixXd form_action(int degree, const Endo<double>& z) {
  int n = combi::kBinom[degree];
  return matrix_of(n, n, [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return flat(endo_extend(z, unflat_form(degree, v)));
  });
}

Endo<double> rotation_generator_matrix(int k) {
  const auto& masks = combi::masks_by_degree()[2];
  int a = __builtin_ctz(masks[k]);
  int b = __builtin_ctz(uint8_t(masks[k] & (masks[k] - 1)));
  Endo<double> z;
  z(a, b) = 1;
  z(b, a) = -1;
  return z;
}

// orthonormal basis of the range of an (orthogonal) projector
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& proj, int rank) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(proj);
  const auto& r = qr.matrixR();
  int found = 0;
  for (long k = 0; k < std::min(proj.rows(), proj.cols()); ++k)
    if (std::abs(r(k, k)) > 1e-8) ++found;
  if (found != rank) throw std::logic_error("range_basis: unexpected rank");
  return qr.householderQ() * Eigen::MatrixXd::Identity(proj.rows(), rank);
}

ParentData make_parent(Parent p) {
  ParentData out;
  switch (p) {
    case Parent::Functions:
      out.dim = 1;
      for (int k = 0; k < 21; ++k) out.gen[k] = Eigen::MatrixXd::Zero(1, 1);
      break;
    case Parent::OneForms:
    case Parent::TwoForms:
    case Parent::ThreeForms:
    case Parent::FourForms: {
      int deg = p == Parent::OneForms    ? 1
                : p == Parent::TwoForms  ? 2
                : p == Parent::ThreeForms ? 3
                                          : 4;
      out.dim = combi::kBinom[deg];
      for (int k = 0; k < 21; ++k)
        out.gen[k] = form_action(deg, rotation_generator_matrix(k));
      break;
    }
    case Parent::Tensor2:
      out.dim = 49;
      for (int k = 0; k < 21; ++k) {
        Endo<double> z = rotation_generator_matrix(k);
        out.gen[k] = matrix_of(49, 49, [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
          Endo<double> t = unflat_endo(v);
          return flat(z * t - t * z);
        });
      }
      break;
    case Parent::Spinors:
      out.dim = 8;
      for (int k = 0; k < 21; ++k) {
        Endo<double> z = rotation_generator_matrix(k);
        out.gen[k] = matrix_of(8, 8, [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
          return flat(spin_rep(g2(), z, unflat_spinor(v)));
        });
      }
      break;
    case Parent::SpinTensors: {
      out.dim = 56;
      const ParentData& s = parent_data(Parent::Spinors);
      for (int k = 0; k < 21; ++k) {
        Endo<double> z = rotation_generator_matrix(k);
        Eigen::MatrixXd zmat(7, 7);
        for (int i = 0; i < 7; ++i)
          for (int j = 0; j < 7; ++j) zmat(i, j) = z(i, j);
        out.gen[k] = Eigen::kroneckerProduct(zmat, Eigen::MatrixXd::Identity(8, 8)) +
                     Eigen::kroneckerProduct(Eigen::MatrixXd::Identity(7, 7), s.gen[k]);
      }
      break;
    }
  }
  const auto& model = ModelData::get();
  for (int k = 0; k < 14; ++k) out.stab[k] = out.act(model.h[k]);
  return out;
}

// ---- inclusions -------------------------------------------------------------

Eigen::MatrixXd make_incl(Bundle b) {
  switch (b) {
    case Bundle::TwoForms7: {
      // X -> (X . phi) / sqrt(3)
      return matrix_of(21, 7, [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        Vec7<double> x = Vec7<double>::from_form(unflat_form(1, v));
        return flat(interior(x, g2().phi())) / std::sqrt(3.0);
      });
    }
    case Bundle::TwoForms14: {
      Eigen::MatrixXd proj = matrix_of(21, 21, [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return flat(g2().project2(unflat_form(2, v)).second);
      });
      return range_basis(proj, 14);
    }
    case Bundle::ThreeForms27: {
      Eigen::MatrixXd proj = matrix_of(35, 35, [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return flat(g2().project3(unflat_form(3, v))[2]);
      });
      return range_basis(proj, 27);
    }
    case Bundle::Sym0: {
      Eigen::MatrixXd proj = matrix_of(49, 49, [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return flat(endo_split(unflat_endo(v)).sym0);
      });
      return range_basis(proj, 27);
    }
    case Bundle::S32: {
      Eigen::MatrixXd proj = matrix_of(56, 56, [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return flat(s32_project(g2(), unflat_spin_tensor(v)));
      });
      return range_basis(proj, 48);
    }
    default: {
      int n = parent_data(parent_of(b)).dim;
      return Eigen::MatrixXd::Identity(n, n);
    }
  }
}

// ---- isotypic summands ------------------------------------------------------

// alpha-block embedding of a 7x7 matrix as a spinor-valued 1-form
Eigen::VectorXd alpha_block(const Endo<double>& m) {
  SpinTensor<double> t;
  for (int i = 0; i < 7; ++i)
    for (int k = 0; k < 7; ++k) t[i].alpha[k] = m(k, i);
  return flat(t);
}

std::vector<Summand> make_summands(Parent p) {
  std::vector<Summand> out;
  auto seven_in_two_forms = [&] {
    return bundle_incl(Bundle::TwoForms7);
  };
  switch (p) {
    case Parent::Functions:
      out.push_back({Bundle::Functions, Eigen::MatrixXd::Identity(1, 1)});
      break;
    case Parent::OneForms:
      out.push_back({Bundle::OneForms, Eigen::MatrixXd::Identity(7, 7)});
      break;
    case Parent::TwoForms:
      out.push_back({Bundle::OneForms, seven_in_two_forms()});
      out.push_back({Bundle::TwoForms14, bundle_incl(Bundle::TwoForms14)});
      break;
    case Parent::ThreeForms: {
      out.push_back({Bundle::Functions, flat(g2().phi()) / std::sqrt(7.0)});
      out.push_back({Bundle::OneForms,
                     matrix_of(35, 7, [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
                       Vec7<double> x = Vec7<double>::from_form(unflat_form(1, v));
                       return flat(interior(x, g2().psi())) / 2.0;
                     })});
      // symmetric trace-free part, scaled to an isometry
      const Eigen::MatrixXd& sym = bundle_incl(Bundle::Sym0);
      Eigen::MatrixXd iso(35, 27);
      for (int k = 0; k < 27; ++k)
        iso.col(k) =
            -2.0 * flat(endo_extend(endo_split(unflat_endo(sym.col(k))).sym0,
                                    g2().phi()));
      iso /= iso.col(0).norm();
      out.push_back({Bundle::Sym0, iso});
      break;
    }
    case Parent::FourForms: {
      Eigen::MatrixXd star = matrix_of(35, 35, [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return flat(hodge(unflat_form(3, v)));
      });
      for (const auto& s : parent_data(Parent::ThreeForms).summands)
        out.push_back({s.model, star * s.iso});
      break;
    }
    case Parent::Tensor2: {
      out.push_back({Bundle::Functions,
                     flat(Endo<double>::identity()) / std::sqrt(7.0)});
      out.push_back({Bundle::OneForms,
                     matrix_of(49, 7, [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
                       Vec7<double> x = Vec7<double>::from_form(unflat_form(1, v));
                       return flat(skew_endo_from_form(interior(x, g2().phi()))) /
                              std::sqrt(6.0);
                     })});
      {
        const Eigen::MatrixXd& w14 = bundle_incl(Bundle::TwoForms14);
        Eigen::MatrixXd iso(49, 14);
        for (int k = 0; k < 14; ++k)
          iso.col(k) =
              flat(skew_endo_from_form(unflat_form(2, w14.col(k)))) / std::sqrt(2.0);
        out.push_back({Bundle::TwoForms14, iso});
      }
      out.push_back({Bundle::Sym0, bundle_incl(Bundle::Sym0)});
      break;
    }
    case Parent::Spinors: {
      Eigen::MatrixXd triv = Eigen::MatrixXd::Zero(8, 1);
      triv(0, 0) = 1;  // the canonical unit spinor
      out.push_back({Bundle::Functions, triv});
      Eigen::MatrixXd seven = Eigen::MatrixXd::Zero(8, 7);
      seven.block(1, 0, 7, 7).setIdentity();
      out.push_back({Bundle::OneForms, seven});
      break;
    }
    case Parent::SpinTensors: {
      // scalar block: x -> sum_i x_i kappa0 (x) e_i
      Eigen::MatrixXd lam(56, 7);
      lam.setZero();
      for (int i = 0; i < 7; ++i) lam(8 * i, i) = 1;
      out.push_back({Bundle::OneForms, lam});
      // skew alpha blocks
      Eigen::MatrixXd w7(56, 7);
      for (int j = 0; j < 7; ++j) {
        Vec7<double> x = Vec7<double>::basis(j);
        w7.col(j) = alpha_block(skew_endo_from_form(interior(x, g2().phi()))) /
                    std::sqrt(6.0);
      }
      out.push_back({Bundle::OneForms, w7});
      const Eigen::MatrixXd& b14 = bundle_incl(Bundle::TwoForms14);
      Eigen::MatrixXd w14(56, 14);
      for (int k = 0; k < 14; ++k)
        w14.col(k) = alpha_block(skew_endo_from_form(unflat_form(2, b14.col(k)))) /
                     std::sqrt(2.0);
      out.push_back({Bundle::TwoForms14, w14});
      // symmetric trace-free and pure-trace alpha blocks
      const Eigen::MatrixXd& sym = bundle_incl(Bundle::Sym0);
      Eigen::MatrixXd s27(56, 27);
      for (int k = 0; k < 27; ++k) s27.col(k) = alpha_block(unflat_endo(sym.col(k)));
      out.push_back({Bundle::Sym0, s27});
      out.push_back({Bundle::Functions,
                     alpha_block(Endo<double>::identity()) / std::sqrt(7.0)});
      break;
    }
  }
  return out;
}

}  // namespace

const char* bundle_name(Bundle b) {
  switch (b) {
    case Bundle::Functions: return "Functions";
    case Bundle::OneForms: return "OneForms";
    case Bundle::TwoForms14: return "TwoForms14";
    case Bundle::Sym0: return "Sym0";
    case Bundle::TwoForms: return "TwoForms";
    case Bundle::TwoForms7: return "TwoForms7";
    case Bundle::ThreeForms: return "ThreeForms";
    case Bundle::ThreeForms27: return "ThreeForms27";
    case Bundle::FourForms: return "FourForms";
    case Bundle::Tensor2: return "Tensor2";
    case Bundle::Spinors: return "Spinors";
    case Bundle::SpinTensors: return "SpinTensors";
    case Bundle::S32: return "S32";
  }
  return "?";
}

Eigen::MatrixXd ParentData::act(const Endo<double>& z) const {
  auto c = detail::so7_coords(z);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < 21; ++k)
    if (c[k] != 0.0) out += c[k] * gen[k];
  return out;
}

const ParentData& parent_data(Parent p) {
  static std::map<Parent, ParentData> cache;
  auto it = cache.find(p);
  if (it == cache.end()) {
    it = cache.emplace(p, make_parent(p)).first;
    it->second.summands = make_summands(p);
  }
  return it->second;
}

Parent parent_of(Bundle b) {
  switch (b) {
    case Bundle::Functions: return Parent::Functions;
    case Bundle::OneForms: return Parent::OneForms;
    case Bundle::TwoForms:
    case Bundle::TwoForms7:
    case Bundle::TwoForms14: return Parent::TwoForms;
    case Bundle::ThreeForms:
    case Bundle::ThreeForms27: return Parent::ThreeForms;
    case Bundle::FourForms: return Parent::FourForms;
    case Bundle::Tensor2:
    case Bundle::Sym0: return Parent::Tensor2;
    case Bundle::Spinors: return Parent::Spinors;
    case Bundle::SpinTensors:
    case Bundle::S32: return Parent::SpinTensors;
  }
  return Parent::Functions;
}

int bundle_dim(Bundle b) { return int(bundle_incl(b).cols()); }

const Eigen::MatrixXd& bundle_incl(Bundle b) {
  static std::map<Bundle, Eigen::MatrixXd> cache;
  auto it = cache.find(b);
  if (it == cache.end()) it = cache.emplace(b, make_incl(b)).first;
  return it->second;
}

const std::array<Eigen::MatrixXd, 14>& bundle_stab(Bundle b) {
  static std::map<Bundle, std::array<Eigen::MatrixXd, 14>> cache;
  auto it = cache.find(b);
  if (it == cache.end()) {
    const ParentData& p = parent_data(parent_of(b));
    const Eigen::MatrixXd& incl = bundle_incl(b);
    std::array<Eigen::MatrixXd, 14> stab;
    for (int k = 0; k < 14; ++k) stab[k] = incl.transpose() * p.stab[k] * incl;
    it = cache.emplace(b, std::move(stab)).first;
  }
  return it->second;
}

}  // namespace npg2::pw
