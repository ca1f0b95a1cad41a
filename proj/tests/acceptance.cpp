// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails. Tolerances are pinned here: 1e-8 for
// block-matrix identity residuals, 1e-6 (relative) for kernel ranks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "npg2/homogeneous.hpp"
#include "npg2/identities.hpp"
#include "npg2/pw/spectral.hpp"

using namespace npg2;

namespace {

constexpr double kIdTol = 1e-8;
constexpr double kKerTol = 1e-6;
constexpr int kMaxLevel = 3;

int g_failures = 0;

void report(int n, const std::string& what, bool ok, const std::string& detail) {
  std::printf("%s  %2d: %s (%s)\n", ok ? "PASS" : "FAIL", n, what.c_str(),
              detail.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const G2Structure<Rat>& g2() { return G2Structure<Rat>::standard(); }

// trace-free symmetric basis of the 7x7 endomorphisms (27 elements)
std::vector<Endo<Rat>> sym0_basis() {
  std::vector<Endo<Rat>> out;
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) {
      Endo<Rat> h;
      h(i, j) = h(j, i) = Rat(1);
      out.push_back(h);
    }
  for (int i = 1; i < 7; ++i) {
    Endo<Rat> h;
    h(0, 0) = Rat(1);
    h(i, i) = Rat(-1);
    out.push_back(h);
  }
  return out;
}

int exact_rank(std::vector<std::vector<Rat>> rows) {
  int rank = 0;
  const int n = rows.empty() ? 0 : int(rows[0].size());
  for (int c = 0; c < n && rank < int(rows.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < int(rows.size()); ++r)
      if (rows[r][c] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = rank + 1; r < int(rows.size()); ++r) {
      if (rows[r][c] == 0) continue;
      Rat f = rows[r][c] / rows[rank][c];
      for (int k = c; k < n; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;

  // 1. pointwise identity suite on the exact backend
  {
    auto t0 = clock::now();
    CheckReport rep = identity_suite<Rat>(7, 100, 0.0);
    double dt = seconds_since(t0);
    report(1, "pointwise cross-product and form identities, exact backend",
           rep.all_pass() && dt < 30.0,
           std::to_string(rep.items.size()) + " checks over 100 trials, " +
               std::to_string(dt) + " s");
  }

  // 2. the defining forms, monomial by monomial
  {
    Form<Rat> phi(3), psi(4);
    phi.at_mask(0b0000111) = 1;   // e^123
    phi.at_mask(0b1100001) = -1;  // e^176 = -e^167
    phi.at_mask(0b1010010) = 1;   // e^257
    phi.at_mask(0b0110100) = -1;  // e^653 = -e^356
    phi.at_mask(0b0011001) = 1;   // e^145
    phi.at_mask(0b0101010) = 1;   // e^246
    phi.at_mask(0b1001100) = 1;   // e^347
    psi.at_mask(0b1111000) = 1;   // e^4567
    psi.at_mask(0b0011110) = -1;  // e^2345
    psi.at_mask(0b0101101) = 1;   // e^1346
    psi.at_mask(0b1001011) = -1;  // e^1247
    psi.at_mask(0b1100110) = 1;   // e^2367
    psi.at_mask(0b1010101) = 1;   // e^1357
    psi.at_mask(0b0110011) = 1;   // e^1256
    bool ok = (g2().phi() == phi) && (g2().psi() == psi) && (hodge(phi) == psi);
    Form<Rat> vol7(7);
    vol7[0] = Rat(7);
    ok = ok && (wedge(phi, psi) == vol7);
    report(2, "coassociative form and the 7 vol pairing", ok,
           "coefficient lists and phi^psi checked exactly");
  }

  // 3. the i/j pair between trace-free symmetric tensors and 3-forms
  {
    bool ok = true;
    std::vector<std::vector<Rat>> image;
    for (const auto& h : sym0_basis()) {
      Form<Rat> gamma = g2().imap(h);
      ok = ok && (g2().jmap(gamma) == Rat(-8) * h);
      ok = ok && wedge(gamma, g2().phi()).is_zero() &&
           wedge(gamma, g2().psi()).is_zero();
      std::vector<Rat> row(gamma.size());
      for (int k = 0; k < gamma.size(); ++k) row[k] = gamma[k];
      image.push_back(std::move(row));
    }
    int rank = exact_rank(image);
    ok = ok && rank == 27;
    report(3, "j after i is -8 and i lands in the 27-dimensional piece", ok,
           "rank " + std::to_string(rank) + ", annihilates phi and psi");
  }

  // 4. curvature layer of the round homogeneous sphere
  {
    CheckReport rep = curvature_suite<Rat>(7, 60, 0.0);
    const auto& model = ReductiveModel<Rat>::standard();
    auto r = curvature_levi_civita(model);
    auto rbar = curvature_canonical(model);
    bool ok = rep.all_pass() &&
              r.ricci() == Rat(6) * Endo<Rat>::identity() &&
              rbar.ricci() == (Rat(16) / Rat(3)) * Endo<Rat>::identity() &&
              r.scal() == Rat(42);
    report(4, "Ricci 6g, canonical Ricci 16/3 g, Bianchi and difference exact",
           ok, std::to_string(rep.items.size()) + " exact curvature checks");
  }

  // 5. normalization pin: the first nonzero Laplace eigenvalue of functions
  {
    bool ok = true;
    long mult = 0;
    for (const auto& w : pw::enumerate_weights(1)) {
      Eigen::MatrixXd lap = pw::standard_op(w, "lap_functions");
      for (auto [ev, m] : pw::clustered_spectrum(lap, kIdTol))
        if (std::abs(ev - 7.0) < kIdTol) mult += m * pw::weyl_dim(w);
    }
    Eigen::MatrixXd l8 = pw::standard_op({0, 0, 1}, "lap_functions");
    ok = l8.rows() == 1 && std::abs(l8(0, 0) - 7.0) < kIdTol && mult == 8;
    report(5, "function Laplacian eigenvalue 7 with multiplicity 8", ok,
           "multiplicity " + std::to_string(mult));
  }

  // 6. blockwise operator identity suite at every weight up to level 3
  {
    auto t0 = clock::now();
    bool ok = true;
    double worst = 0;
    int total = 0;
    for (const auto& w : pw::enumerate_weights(kMaxLevel)) {
      for (const auto& it : pw::operator_identity_suite(w, kIdTol)) {
        ok = ok && it.pass;
        worst = std::max(worst, it.residual);
        ++total;
      }
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 300.0;
    report(6, "first- and second-order operator identities on every block", ok,
           std::to_string(total) + " checks, worst residual " +
               std::to_string(worst) + ", " + std::to_string(dt) + " s");
  }

  // criteria 7-11 share the spectral report
  pw::SpectralReport spec = pw::spectral_report(kMaxLevel, kKerTol);

  // 7. Killing spinors counted two independent ways
  {
    long by_dirac = 0;
    for (const auto& row : spec.rows) {
      Eigen::MatrixXd d = pw::standard_op(row.w, "dirac");
      by_dirac += long(pw::kernel_dim(d, -3.5, kKerTol)) * row.rep_dim;
    }
    bool ok = spec.total_killing == 8 && by_dirac == 8;
    report(7, "eight Killing spinors, via the Killing operator and the Dirac "
              "eigenvalue -7/2",
           ok, "kernel total " + std::to_string(spec.total_killing) +
                   ", eigenspace total " + std::to_string(by_dirac));
  }

  // 8. Rarita-Schwinger kernel matches the -1/2 eigenspace on every block
  {
    auto items = pw::theorem_check('B', kMaxLevel, kKerTol);
    bool ok = !items.empty() && spec.total_ker_q == 0 && spec.total_rgamma == 0;
    for (const auto& it : items) ok = ok && it.pass;
    report(8, "no Rarita-Schwinger fields: blockwise kernel equals the "
              "-1/2 eigenspace, both zero",
           ok, std::to_string(items.size()) + " blockwise equalities");
  }

  // 9. deformation space matches the -4 eigenspace; D1 complements the kernel
  {
    auto items = pw::theorem_check('A', kMaxLevel, kKerTol);
    bool ok = !items.empty() &&
              spec.total_d1 == spec.total_killing - 1 && spec.total_d3 == 0;
    for (const auto& it : items) ok = ok && it.pass;
    report(9, "Killing-spinor deformations match the eigenvalue description",
           ok, std::to_string(items.size()) + " blockwise equalities, " +
                   std::to_string(spec.total_d1) + " Killing one-forms");
  }

  // 10. structure of the constrained spin-3/2 space
  {
    bool ok = true;
    int checks = 0;
    for (const auto& row : spec.rows) {
      for (const auto& it : row.checks) {
        ok = ok && it.pass;
        ++checks;
      }
    }
    report(10, "spin-3/2 sections have no one-form part; constrained "
               "eigenvalues confined to -1/2 and -3/2",
           ok, std::to_string(checks) + " per-weight structure checks");
  }

  // 11. instability certificate
  {
    auto items = pw::instability_certificate(kMaxLevel, kKerTol);
    bool ok = !items.empty();
    bool threshold = false, witness = false;
    for (const auto& it : items) {
      ok = ok && it.pass;
      if (it.name.find("stability threshold") != std::string::npos) threshold = true;
      if (it.name.find("no destabilizing witness") != std::string::npos)
        witness = true;
    }
    ok = ok && threshold && witness;
    report(11, "instability pipeline: 13/4 - 12 < 0 and no witness on the "
               "round sphere",
           ok, std::to_string(items.size()) + " certificate checks");
  }

  std::printf("%s: %d of 11 criteria failed\n", g_failures ? "FAILURE" : "SUCCESS",
              g_failures);
  return g_failures ? 1 : 0;
}
