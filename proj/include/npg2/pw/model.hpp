#pragma once

#include <Eigen/Dense>

#include <array>

#include "npg2/g2.hpp"
#include "npg2/homogeneous.hpp"

namespace npg2::pw {

inline Eigen::Matrix<double, 7, 7> to_eigen(const Endo<Rat>& z) {
  Eigen::Matrix<double, 7, 7> out;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) out(i, j) = to_double(z(i, j));
  return out;
}

inline Endo<double> from_eigen(const Eigen::Matrix<double, 7, 7>& m) {
  Endo<double> z;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) z(i, j) = m(i, j);
  return z;
}

/// Double-precision snapshot of the exact reductive model: calibrated tangent
/// generators m(e_i), a trace-orthonormal basis of the 14-dimensional
/// stabilizer subalgebra, and the cross-product endomorphisms A_{e_i}.
struct ModelData {
  std::array<Endo<double>, 7> m;       // calibrated tangent generators
  std::array<Endo<double>, 14> h;      // orthonormal w.r.t. tr(X^t Y)
  std::array<Endo<double>, 7> cross;   // A_{e_i}

  static const ModelData& get() {
    static const ModelData d = build();
    return d;
  }

 private:
  static ModelData build() {
    ModelData out;
    const auto& model = ReductiveModel<Rat>::standard();
    const auto& g2 = G2Structure<Rat>::standard();
    for (int i = 0; i < 7; ++i) {
      Vec7<Rat> ei;
      ei[i] = Rat(1);
      out.m[i] = from_eigen(to_eigen(model.m_of(ei)));
      out.cross[i] = from_eigen(to_eigen(g2.cross_endo(i)));
    }
    // Gram-Schmidt on the stabilizer basis under <X,Y> = tr(X^t Y)
    std::array<Endo<double>, 14> raw;
    for (int k = 0; k < 14; ++k) raw[k] = from_eigen(to_eigen(model.h_basis()[k]));
    auto dot = [](const Endo<double>& x, const Endo<double>& y) {
      double s = 0;
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) s += x(i, j) * y(i, j);
      return s;
    };
    for (int k = 0; k < 14; ++k) {
      Endo<double> v = raw[k];
      for (int pass = 0; pass < 2; ++pass)
        for (int l = 0; l < k; ++l) v = v - dot(out.h[l], v) * out.h[l];
      out.h[k] = (1.0 / std::sqrt(dot(v, v))) * v;
    }
    return out;
  }
};

}  // namespace npg2::pw
