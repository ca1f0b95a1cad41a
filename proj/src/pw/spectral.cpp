#include "npg2/pw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace npg2::pw {

namespace {

using M = Eigen::MatrixXd;

const G2Structure<double>& g2() { return G2Structure<double>::standard(); }

Eigen::VectorXd singular_values(const M& a) {
  Eigen::JacobiSVD<M> svd(a);
  return svd.singularValues();
}

M shifted(const M& op, double shift) {
  if (shift == 0) return op;
  if (op.rows() != op.cols())
    throw std::invalid_argument("kernel_dim: shift needs a square block");
  return op - shift * M::Identity(op.rows(), op.cols());
}

int count_null(const Eigen::VectorXd& sv, int cols, double tol) {
  if (sv.size() == 0) return cols;
  // blocks are assembled from O(1) fiber maps over orthonormal bases, so a
  // top singular value far below 1 means the block itself vanishes; the
  // relative threshold is floored there to keep zero blocks decidable
  double scale = std::max(sv[0], 1.0);
  int k = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv[i] < tol * scale)
      ++k;
    else if (sv[i] < 10 * tol * scale)
      throw std::runtime_error("kernel_dim: singular value in the guard band");
  }
  return k + cols - int(sv.size());
}

// zero-order block of an equivariant fiber map
M zblock(const Weight& w, Bundle src, Bundle tgt, const M& fiber) {
  return assemble_first_order(w, src, tgt, nullptr, &fiber);
}

// first-order block: sum_j sig_j nablabar_j (+ source torsion if lc) + extra
M fblock(const Weight& w, Bundle src, Bundle tgt, const Symbol7& sig,
         const M* extra, bool lc) {
  Parent ps = parent_of(src);
  M z = M::Zero(parent_data(parent_of(tgt)).dim, parent_data(ps).dim);
  bool have = false;
  if (lc) {
    for (int j = 0; j < 7; ++j) z += sig[j] * torsion_map(ps, j);
    have = true;
  }
  if (extra) {
    z += *extra;
    have = true;
  }
  return assemble_first_order(w, src, tgt, &sig, have ? &z : nullptr);
}

// projector of the three-form fiber onto its 7-dimensional part
const M& three_form_proj7() {
  static const M p = [] {
    Eigen::VectorXd phi = flat(g2().phi());
    M p27 = bundle_projector(Bundle::ThreeForms27);
    return M(M::Identity(35, 35) - p27 - phi * phi.transpose() / 7.0);
  }();
  return p;
}

struct ConstrainedBlock {
  M n;        // orthonormal basis of the constrained subspace (27-block coords)
  M sc;       // *d restricted to it (symmetric)
  M j27;      // inclusion of the 27-block into the three-form block
  double invariance = 0;  // residual of *d preserving the subspace
};

ConstrainedBlock constrained_block(const Weight& w, double tol) {
  ConstrainedBlock out;
  Symbol7 dsig, ssig;
  for (int j = 0; j < 7; ++j) {
    dsig[j] = -hook_map(j, 3);
    ssig[j] = hodge_map(4) * wedge_map(j, 3);
  }
  M delta7 = fblock(w, Bundle::ThreeForms27, Bundle::TwoForms7, dsig, nullptr, true);
  M s27 = fblock(w, Bundle::ThreeForms27, Bundle::ThreeForms27, ssig, nullptr, true);
  out.n = kernel_basis(delta7, 0, tol);
  out.j27 = zblock(w, Bundle::ThreeForms27, Bundle::ThreeForms, M(M::Identity(35, 35)));
  if (out.n.cols() == 0) {
    out.sc = M::Zero(0, 0);
    return out;
  }
  M sn = s27 * out.n;
  out.invariance = ((M::Identity(out.n.rows(), out.n.rows()) -
                     out.n * out.n.transpose()) *
                    sn)
                       .norm();
  out.sc = out.n.transpose() * sn;
  return out;
}

int eig_mult(const std::vector<std::pair<double, int>>& spec, double at, double tol) {
  for (const auto& [v, m] : spec)
    if (std::abs(v - at) <= tol) return m;
  return 0;
}

}  // namespace

int kernel_dim(const Eigen::MatrixXd& op, double shift, double tol) {
  if (op.cols() == 0) return 0;
  if (op.rows() == 0) return int(op.cols());
  return count_null(singular_values(shifted(op, shift)), int(op.cols()), tol);
}

Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& op, double shift, double tol) {
  if (op.cols() == 0) return M::Zero(0, 0);
  if (op.rows() == 0) return M(M::Identity(op.cols(), op.cols()));
  M a = shifted(op, shift);
  Eigen::JacobiSVD<M> svd(a, Eigen::ComputeFullV);
  int k = count_null(svd.singularValues(), int(op.cols()), tol);
  return M(svd.matrixV().rightCols(k));
}

std::vector<std::pair<double, int>> clustered_spectrum(const Eigen::MatrixXd& sym,
                                                       double tol) {
  std::vector<std::pair<double, int>> out;
  if (sym.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<M> es(0.5 * (sym + sym.transpose()));
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double v = es.eigenvalues()[i];
    if (!out.empty() && std::abs(v - out.back().first) <= tol)
      ++out.back().second;
    else
      out.push_back({v, 1});
  }
  return out;
}

SpectralReport spectral_report(int max_level, double tol) {
  SpectralReport rep;
  rep.max_level = max_level;
  rep.tol = tol;
  for (const Weight& w : enumerate_weights(max_level)) {
    WeightReport row;
    row.w = w;
    row.rep_dim = get_irrep(w).dim;
    auto add = [&](const std::string& name, const std::string& anchor, double res) {
      row.checks.push_back({name, anchor, res, res <= 1e-8});
    };

    row.killing = kernel_dim(standard_op(w, "killing_spinor"), 0, tol);
    row.d1 = kernel_dim(standard_op(w, "killing_one_form"), 0, tol);
    row.ker_q = kernel_dim(standard_op(w, "rarita"), 0, tol);

    // symmetric-tensor form of the Rarita-Schwinger space: divergence-free
    // solutions of 3 A_{e_i*} nablabar_i H = -H
    {
      const M& st = standard_op(w, "sym_torsion");
      const M& dv = standard_op(w, "div_sym");
      M stacked(st.rows() + dv.rows(), st.cols());
      stacked << st + M::Identity(st.rows(), st.cols()), dv;
      row.rh = kernel_dim(stacked, 0, tol);
    }

    // *d on 27-type three-forms with a 14-type codifferential
    ConstrainedBlock cb = constrained_block(w, tol);
    add("star derivative preserves the constrained block", "thm-A", cb.invariance);
    if (cb.sc.rows() > 0) {
      add("star derivative symmetric on the constrained block", "thm-B",
          (cb.sc - cb.sc.transpose()).norm());
      auto spec = clustered_spectrum(cb.sc, 1e-6);
      for (const auto& [v, m] : spec)
        for (int i = 0; i < m; ++i) row.stard_spectrum.push_back(v);
      row.d3 = eig_mult(spec, -4.0, tol);
      row.rgamma = eig_mult(spec, -0.5, tol);

      // cross-check (a): the -1/2 eigenspace sits in the 1/4 eigenspace of
      // the standard Laplacian and the -1/12 eigenspace of the canonical one
      if (row.rgamma > 0) {
        Eigen::SelfAdjointEigenSolver<M> es(0.5 * (cb.sc + cb.sc.transpose()));
        M rb(cb.n.rows(), 0);
        for (int i = 0; i < es.eigenvalues().size(); ++i)
          if (std::abs(es.eigenvalues()[i] + 0.5) <= tol) {
            rb.conservativeResize(Eigen::NoChange, rb.cols() + 1);
            rb.col(rb.cols() - 1) = cb.n * es.eigenvectors().col(i);
          }
        M jr = cb.j27 * rb;
        add("minus-half eigenspace in the quarter laplace eigenspace", "thm-B",
            (standard_op(w, "lap_three_forms") * jr - 0.25 * jr).norm());
        add("minus-half eigenspace in the canonical laplace eigenspace", "thm-B",
            (standard_op(w, "glap_three_forms") * jr + (1.0 / 12.0) * jr).norm());
      }

      // cross-check (b): the second-order space splits into the two nonzero
      // *d eigenspaces; the closed piece with d delta = -3/4 is empty
      {
        M dd = standard_op(w, "d2") * standard_op(w, "delta3");
        M jn = cb.j27 * cb.n;
        M op5 = 4.0 * dd * jn + 6.0 * standard_op(w, "star_d3") * jn + 3.0 * jn;
        int k5 = kernel_dim(op5, 0, tol);
        auto spec5 = clustered_spectrum(cb.sc, 1e-6);
        int expect = eig_mult(spec5, -0.5, tol) + eig_mult(spec5, -1.5, tol);
        add("second-order space matches the two eigenspaces", "thm-B",
            std::abs(double(k5 - expect)));
        Eigen::SelfAdjointEigenSolver<M> es(0.5 * (cb.sc + cb.sc.transpose()));
        M e0(cb.n.cols(), 0);
        for (int i = 0; i < es.eigenvalues().size(); ++i)
          if (std::abs(es.eigenvalues()[i]) <= tol) {
            e0.conservativeResize(Eigen::NoChange, e0.cols() + 1);
            e0.col(e0.cols() - 1) = es.eigenvectors().col(i);
          }
        if (e0.cols() > 0) {
          M closed = jn * e0;
          add("closed piece of the second-order space is empty", "thm-B",
              double(kernel_dim(M(dd * closed + 0.75 * closed), 0, tol)));
        }
      }
    }

    // cross-check (c): the kernel of the Rarita-Schwinger operator has no
    // one-form component
    if (row.ker_q > 0) {
      M kq = kernel_basis(standard_op(w, "rarita"), 0, tol);
      M o = zblock(w, Bundle::S32, Bundle::OneForms, spin_tensor_scalar_part_map());
      add("rarita kernel has no one-form part", "thm-B", (o * kq).norm());
    }

    rep.total_killing += long(row.killing) * row.rep_dim;
    rep.total_d1 += long(row.d1) * row.rep_dim;
    rep.total_d3 += long(row.d3) * row.rep_dim;
    rep.total_rgamma += long(row.rgamma) * row.rep_dim;
    rep.total_ker_q += long(row.ker_q) * row.rep_dim;
    rep.total_rh += long(row.rh) * row.rep_dim;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::vector<CheckItem> theorem_check(char which, int max_level, double tol) {
  std::vector<CheckItem> items;
  auto add = [&](const std::string& name, const std::string& anchor, double res) {
    items.push_back({name, anchor, res, res <= 1e-8});
  };
  SpectralReport rep = spectral_report(max_level, tol);
  auto tag = [](const Weight& w) {
    return " at (" + std::to_string(w.a) + "," + std::to_string(w.b) + "," +
           std::to_string(w.c) + ")";
  };

  if (which == 'A') {
    for (const auto& row : rep.rows) {
      const Weight& w = row.w;
      const M& dv = standard_op(w, "div_sym");
      const M& def = standard_op(w, "deformation");
      M ns = kernel_basis(dv, 0, tol);
      M tn = def * ns;
      int ker_t = ns.cols() > 0 ? kernel_dim(tn, 0, tol) : 0;
      add("deformation space matches the minus-four eigenspace" + tag(w), "thm-A",
          std::abs(double(ker_t - row.d3)));
      if (ker_t > 0) {
        // the induced three-forms of the deformation kernel solve the
        // eigenvalue problem and satisfy the codifferential constraint
        M hk = ns * kernel_basis(tn, 0, tol);
        M i27 = zblock(w, Bundle::Sym0, Bundle::ThreeForms27, sym_to_three_map());
        Symbol7 dsig, ssig;
        for (int j = 0; j < 7; ++j) {
          dsig[j] = -hook_map(j, 3);
          ssig[j] = hodge_map(4) * wedge_map(j, 3);
        }
        M delta7 =
            fblock(w, Bundle::ThreeForms27, Bundle::TwoForms7, dsig, nullptr, true);
        M s27 =
            fblock(w, Bundle::ThreeForms27, Bundle::ThreeForms27, ssig, nullptr, true);
        M gk = i27 * hk;
        double scale = std::max(1.0, gk.norm());
        add("deformation three-forms satisfy the eigenvalue equation" + tag(w),
            "thm-A", (s27 * gk + 4.0 * gk).norm() / scale);
        add("deformation three-forms are codifferential-constrained" + tag(w),
            "thm-A", (delta7 * gk).norm() / scale);
      }
    }
    add("killing one-forms complement the killing spinors", "thm-A",
        std::abs(double(rep.total_d1 - (rep.total_killing - 1))));
  } else if (which == 'B') {
    for (const auto& row : rep.rows)
      add("rarita-schwinger kernel matches the minus-half eigenspace" + tag(row.w),
          "thm-B", std::abs(double(row.ker_q - row.rgamma)));
    for (const auto& row : rep.rows)
      for (const auto& c : row.checks)
        if (c.anchor == "thm-B") items.push_back(c);
  } else {
    throw std::invalid_argument("theorem_check: which must be 'A' or 'B'");
  }
  return items;
}

std::vector<CheckItem> instability_certificate(int max_level, double tol) {
  std::vector<CheckItem> items;
  auto add = [&](const std::string& name, const std::string& anchor, double res,
                 bool pass) {
    items.push_back({name, anchor, res, pass});
  };

  // eigenvalue arithmetic: a Rarita-Schwinger witness forces Delta H = 13/4 H,
  // strictly below the stability threshold 2 E = 12
  {
    Rat gap = Rat(13) / Rat(4) - Rat(12);
    bool ok = gap == Rat(-35) / Rat(4) && gap < Rat(0);
    add("eigenvalue sits below the stability threshold", "sec-6.2", 0.0, ok);
  }

  long witnesses = 0;
  for (const Weight& w : enumerate_weights(max_level)) {
    // conjugated-Laplacian identity on every 27-type block
    if (hom_dim(w, Bundle::ThreeForms27) > 0) {
      M j27 = zblock(w, Bundle::ThreeForms27, Bundle::ThreeForms,
                     M(M::Identity(35, 35)));
      M inv = zblock(w, Bundle::ThreeForms27, Bundle::Sym0, three_to_sym_map());
      M fwd = zblock(w, Bundle::Sym0, Bundle::ThreeForms, sym_to_three_map());
      M jsym = zblock(w, Bundle::Sym0, Bundle::Tensor2, M(M::Identity(49, 49)));
      M lap_sym0 = jsym.transpose() * standard_op(w, "lap_tensor2") * jsym;
      M sd = standard_op(w, "star_d3") * j27;
      M proj7 = zblock(w, Bundle::ThreeForms, Bundle::ThreeForms, three_form_proj7());
      M proj27 = zblock(w, Bundle::ThreeForms, Bundle::ThreeForms,
                        bundle_projector(Bundle::ThreeForms27));
      double res = (fwd * lap_sym0 * inv - standard_op(w, "lap_three_forms") * j27 +
                    2.0 * proj7 * sd - 2.0 * proj27 * sd - 4.0 * j27)
                       .norm();
      add("conjugated laplacian identity at (" + std::to_string(w.a) + "," +
              std::to_string(w.b) + "," + std::to_string(w.c) + ")",
          "lem-6.2", res, res <= 1e-8);
    }

    // witness search
    const M& st = standard_op(w, "sym_torsion");
    const M& dv = standard_op(w, "div_sym");
    M stacked(st.rows() + dv.rows(), st.cols());
    stacked << st + M::Identity(st.rows(), st.cols()), dv;
    int rh = kernel_dim(stacked, 0, tol);
    if (rh > 0) {
      witnesses += long(rh) * get_irrep(w).dim;
      // a witness must solve the 13/4 eigenvalue equation
      M hk = kernel_basis(stacked, 0, tol);
      M jsym = zblock(w, Bundle::Sym0, Bundle::Tensor2, M(M::Identity(49, 49)));
      M jh = jsym * hk;
      double res = (standard_op(w, "lap_tensor2") * jh - 3.25 * jh).norm();
      add("witness eigenvalue equation", "sec-6.2", res, res <= 1e-8);
    }
  }
  add("no destabilizing witness on the round sphere", "sec-6.2", double(witnesses),
      witnesses == 0);
  return items;
}

}  // namespace npg2::pw
