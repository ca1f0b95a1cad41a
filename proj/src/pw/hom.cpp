#include "npg2/pw/hom.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <map>
#include <random>
#include <stdexcept>

#include "npg2/pw/model.hpp"

namespace npg2::pw {

namespace {

// nullspace of a PSD matrix by shift-inverted block iteration; throws if the
// spectral gap between kept and discarded directions is not clean
Eigen::MatrixXd psd_nullspace(const Eigen::MatrixXd& m) {
  const long n = m.rows();
  if (n == 0) return Eigen::MatrixXd(0, 0);
  const double scale = m.cwiseAbs().maxCoeff() + 1.0;
  const double delta = 1e-10 * scale;
  Eigen::LDLT<Eigen::MatrixXd> fact(m + delta * Eigen::MatrixXd::Identity(n, n));

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(-1, 1);
  long block = std::min<long>(n, 8);
  while (true) {
    Eigen::MatrixXd x = Eigen::MatrixXd::NullaryExpr(
        n, block, [&](Eigen::Index, Eigen::Index) { return unif(rng); });
    for (int iter = 0; iter < 4; ++iter) {
      x = fact.solve(x);
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
      x = qr.householderQ() * Eigen::MatrixXd::Identity(n, block);
    }
    // Rayleigh quotient on the subspace; its small eigenvalues converge to
    // the bottom of the spectrum
    Eigen::MatrixXd rq = x.transpose() * m * x;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rq);
    long null = 0;
    for (long k = 0; k < block; ++k)
      if (es.eigenvalues()[k] < 1e-9 * scale) ++null;
    if (null == block && block < n) {
      block = std::min(n, 2 * block);  // nullspace may be larger; retry wider
      continue;
    }
    if (null < block && es.eigenvalues()[null] < 1e-5 * scale)
      throw std::runtime_error("hom space: unresolved casimir nullspace gap");
    return x * es.eigenvectors().leftCols(null);
  }
}

// cache of Hom(V_w, U) for the four model fibers, in model coordinates
const std::vector<Eigen::MatrixXd>& model_hom(const Weight& w, Bundle model) {
  static std::map<std::pair<Weight, Bundle>, std::vector<Eigen::MatrixXd>> cache;
  auto key = std::make_pair(w, model);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const Irrep& rep = get_irrep(w);
  const IsotypicData& iso = isotypic_data(w);
  const auto& stab_u = bundle_stab(model);
  const int u = bundle_dim(model);
  const double cu = fiber_casimir(model);

  // Casimir eigenvectors matching the fiber scalar. The cluster tolerance is
  // far above the eigensolver error and far below the spacing of the exact
  // (integer-scaled) Casimir values.
  std::vector<long> pick;
  for (long k = 0; k < iso.evals.size(); ++k)
    if (std::abs(iso.evals[k] - cu) < 1e-6 * (1 + std::abs(cu))) pick.push_back(k);

  std::vector<Eigen::MatrixXd> out;
  if (!pick.empty()) {
    const long d = rep.dim, nd = long(pick.size());
    Eigen::MatrixXd e(d, nd);
    for (long k = 0; k < nd; ++k) e.col(k) = iso.evecs.col(pick[k]);

    // coupled Casimir on Hom(E, U); its nullspace is the intertwiner space
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(u * nd, u * nd);
    for (int k = 0; k < 14; ++k) {
      Eigen::MatrixXd re = e.transpose() * (iso.stab[k] * e);
      m += Eigen::kroneckerProduct(-re * re, Eigen::MatrixXd::Identity(u, u));
      m += Eigen::kroneckerProduct(Eigen::MatrixXd::Identity(nd, nd),
                                   -stab_u[k] * stab_u[k]);
      m -= 2 * Eigen::kroneckerProduct(re, stab_u[k]);
    }
    Eigen::MatrixXd null = psd_nullspace(m);
    for (long j = 0; j < null.cols(); ++j) {
      Eigen::Map<const Eigen::MatrixXd> a(null.col(j).data(), u, nd);
      out.push_back(a * e.transpose());
    }
  }
  return cache.emplace(std::move(key), std::move(out)).first->second;
}

}  // namespace

const IsotypicData& isotypic_data(const Weight& w) {
  static std::map<Weight, IsotypicData> cache;
  auto it = cache.find(w);
  if (it != cache.end()) return it->second;

  const Irrep& rep = get_irrep(w);
  const auto& model = ModelData::get();
  IsotypicData data;
  Eigen::MatrixXd cas = Eigen::MatrixXd::Zero(rep.dim, rep.dim);
  for (int k = 0; k < 14; ++k) {
    data.stab[k] = rep.act(model.h[k]);
    cas += data.stab[k] * data.stab[k];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cas);
  data.evals = es.eigenvalues();
  data.evecs = es.eigenvectors();
  return cache.emplace(w, std::move(data)).first->second;
}

double fiber_casimir(Bundle model) {
  static std::map<Bundle, double> cache;
  auto it = cache.find(model);
  if (it != cache.end()) return it->second;
  const auto& stab = bundle_stab(model);
  const int u = bundle_dim(model);
  Eigen::MatrixXd cas = Eigen::MatrixXd::Zero(u, u);
  for (int k = 0; k < 14; ++k) cas += stab[k] * stab[k];
  double c = cas.trace() / u;
  if ((cas - c * Eigen::MatrixXd::Identity(u, u)).cwiseAbs().maxCoeff() > 1e-8)
    throw std::logic_error("model fiber casimir is not scalar");
  return cache.emplace(model, c).first->second;
}

const HomBlock& hom_space(const Weight& w, Bundle b) {
  static std::map<std::pair<Weight, Bundle>, HomBlock> cache;
  auto key = std::make_pair(w, b);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  HomBlock block;
  block.w = w;
  block.b = b;
  const ParentData& parent = parent_data(parent_of(b));
  const Eigen::MatrixXd& incl = bundle_incl(b);
  const bool full = incl.rows() == incl.cols();

  std::vector<Eigen::MatrixXd> cand;
  for (const auto& s : parent.summands) {
    Eigen::MatrixXd path = full ? s.iso : Eigen::MatrixXd(incl.transpose() * s.iso);
    for (const auto& a : model_hom(w, s.model)) cand.push_back(path * a);
  }
  // for full parents the candidates are already orthonormal; sub-bundles need
  // a reorthonormalization that drops the discarded isotypic directions
  for (auto& a : cand) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b2 : block.elems) a -= (b2.array() * a.array()).sum() * b2;
    double norm = a.norm();
    if (norm > 1e-8) block.elems.push_back(a / norm);
  }
  return cache.emplace(std::move(key), std::move(block)).first->second;
}

}  // namespace npg2::pw
