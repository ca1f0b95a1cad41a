#include "npg2/pw/irrep.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "npg2/combinatorics.hpp"
#include "npg2/pw/model.hpp"
#include "npg2/spinor.hpp"

namespace npg2::pw {

namespace {

// lambda in orthogonal coordinates
std::array<double, 3> eps_coords(const Weight& w) {
  return {w.a + w.b + 0.5 * w.c, w.b + 0.5 * w.c, 0.5 * w.c};
}

constexpr std::array<double, 3> kRho = {2.5, 1.5, 0.5};

// positive roots in orthogonal coordinates
const std::vector<std::array<double, 3>>& positive_roots() {
  static const std::vector<std::array<double, 3>> roots = [] {
    std::vector<std::array<double, 3>> r;
    for (int i = 0; i < 3; ++i) {
      std::array<double, 3> e{};
      e[i] = 1;
      r.push_back(e);
      for (int j = i + 1; j < 3; ++j) {
        std::array<double, 3> p{}, m{};
        p[i] = 1;
        p[j] = 1;
        m[i] = 1;
        m[j] = -1;
        r.push_back(p);
        r.push_back(m);
      }
    }
    return r;
  }();
  return roots;
}

double dot3(const std::array<double, 3>& x, const std::array<double, 3>& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

// the elementary rotation with matrix entry (a,b) = +1 for the k-th 2-subset
Endo<double> rotation_generator(int k) {
  const auto& masks = combi::masks_by_degree()[2];
  int a = __builtin_ctz(masks[k]);
  int b = __builtin_ctz(uint8_t(masks[k] & (masks[k] - 1)));
  Endo<double> z;
  z(a, b) = 1;
  z(b, a) = -1;
  return z;
}

// generator images on the three basic factors ---------------------------

Eigen::MatrixXd vector_gen(int k) {
  Eigen::MatrixXd g(7, 7);
  const Endo<double> z = rotation_generator(k);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) g(i, j) = z(i, j);
  return g;
}

Eigen::MatrixXd rotation_gen(int k) {
  const Endo<double> z = rotation_generator(k);
  Eigen::MatrixXd g(21, 21);
  for (int j = 0; j < 21; ++j) {
    Form<double> basis(2);
    basis[j] = 1;
    Form<double> img = endo_extend(z, basis);
    for (int i = 0; i < 21; ++i) g(i, j) = img[i];
  }
  return g;
}

Eigen::VectorXd flat_spinor(const Spinor<double>& s) {
  Eigen::VectorXd v(8);
  v[0] = s.f;
  for (int i = 0; i < 7; ++i) v[i + 1] = s.alpha[i];
  return v;
}

Eigen::MatrixXd spin_gen(int k) {
  const auto& g2 = G2Structure<double>::standard();
  const Endo<double> z = rotation_generator(k);
  Eigen::MatrixXd g(8, 8);
  for (int j = 0; j < 8; ++j) {
    Spinor<double> basis;
    if (j == 0)
      basis.f = 1;
    else
      basis.alpha[j - 1] = 1;
    g.col(j) = flat_spinor(spin_rep(g2, z, basis));
  }
  return g;
}

const std::array<Eigen::MatrixXd, 21>& basic_gens(int which) {
  static const std::array<std::array<Eigen::MatrixXd, 21>, 3> table = [] {
    std::array<std::array<Eigen::MatrixXd, 21>, 3> t;
    for (int k = 0; k < 21; ++k) {
      t[0][k] = vector_gen(k);
      t[1][k] = rotation_gen(k);
      t[2][k] = spin_gen(k);
    }
    return t;
  }();
  return table[which];
}

// index of the Cartan generator h_i = G_{2i,2i+1} within the 2-subset list
int cartan_index(int i) {
  const auto& masks = combi::masks_by_degree()[2];
  uint8_t want = uint8_t((1 << (2 * i)) | (1 << (2 * i + 1)));
  for (int k = 0; k < 21; ++k)
    if (masks[k] == want) return k;
  throw std::logic_error("cartan generator not found");
}

Eigen::VectorXcd vector_top() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(7);
  v[0] = {1, 0};
  v[1] = {0, 1};
  return v;
}

Eigen::VectorXcd rotation_top() {
  // (e1 + i e2) ^ (e3 + i e4)
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(21);
  v[combi::mask_index(0b00000101)] = {1, 0};   // e1 ^ e3
  v[combi::mask_index(0b00001010)] = {-1, 0};  // e2 ^ e4
  v[combi::mask_index(0b00001001)] = {0, 1};   // e1 ^ e4
  v[combi::mask_index(0b00000110)] = {0, 1};   // e2 ^ e3
  return v;
}

Eigen::VectorXcd spin_top() {
  // joint eigenvector of the Cartan generators with eigenvalue i/2
  using Mat = Eigen::MatrixXcd;
  Mat basis = Mat::Identity(8, 8);
  const std::complex<double> half_i(0, 0.5);
  for (int i = 0; i < 3; ++i) {
    Mat h = basic_gens(2)[cartan_index(i)].cast<std::complex<double>>();
    Mat restricted = basis.adjoint() * h * basis - half_i * Mat::Identity(basis.cols(), basis.cols());
    Eigen::JacobiSVD<Mat> svd(restricted, Eigen::ComputeFullV);
    int null = 0;
    for (int k = 0; k < svd.singularValues().size(); ++k)
      if (svd.singularValues()[k] < 1e-10 * svd.singularValues()[0]) ++null;
    basis = basis * svd.matrixV().rightCols(null);
  }
  if (basis.cols() != 1)
    throw std::logic_error("spin top weight line is not one-dimensional");
  return basis.col(0);
}

// apply g to the factor at the given slot of a block of ambient vectors
Eigen::MatrixXd apply_slot(const Eigen::MatrixXd& block, const Eigen::MatrixXd& g,
                           long left, long mid, long right) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(block.rows(), block.cols());
  for (long col = 0; col < block.cols(); ++col) {
    for (long l = 0; l < left; ++l) {
      // contiguous (mid x right) slice starting at l*mid*right
      Eigen::Map<const Eigen::MatrixXd> in(block.col(col).data() + l * mid * right,
                                           right, mid);
      Eigen::Map<Eigen::MatrixXd> dst(out.col(col).data() + l * mid * right, right,
                                      mid);
      dst = in * g.transpose();
    }
  }
  return out;
}

}  // namespace

std::vector<Weight> enumerate_weights(int max_level) {
  std::vector<Weight> out;
  for (int a = 0; a <= max_level; ++a)
    for (int b = 0; a + b <= max_level; ++b)
      for (int c = 0; a + b + c <= max_level; ++c) out.push_back({a, b, c});
  std::sort(out.begin(), out.end());
  return out;
}

long weyl_dim(const Weight& w) {
  auto lam = eps_coords(w);
  std::array<double, 3> lr = {lam[0] + kRho[0], lam[1] + kRho[1], lam[2] + kRho[2]};
  double d = 1;
  for (const auto& alpha : positive_roots()) d *= dot3(lr, alpha) / dot3(kRho, alpha);
  return std::lround(d);
}

double casimir_scalar(const Weight& w) {
  auto lam = eps_coords(w);
  return dot3(lam, lam) + 2 * (lam[0] * kRho[0] + lam[1] * kRho[1] + lam[2] * kRho[2]);
}

Eigen::MatrixXd Irrep::act(const Endo<double>& z) const {
  auto c = detail::so7_coords(z);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < 21; ++k)
    if (c[k] != 0.0) out += c[k] * gen[k];
  return out;
}

namespace {

// one step of the recursive construction: V_w inside V_basic (x) V_rest
struct Slot {
  int dim;
  const std::array<Eigen::MatrixXd, 21>* gen;  // rotation images
  const std::array<Eigen::MatrixXd, 7>* tan;   // tangent generator images
};

}  // namespace

Irrep build_irrep(const Weight& w) {
  const long target = weyl_dim(w);

  if (w.level() == 0) {
    Irrep out;
    out.weight = w;
    out.dim = 1;
    for (int k = 0; k < 21; ++k) out.gen[k] = Eigen::MatrixXd::Zero(1, 1);
    for (int i = 0; i < 7; ++i) out.tangent_[i] = Eigen::MatrixXd::Zero(1, 1);
    out.top = Eigen::VectorXcd::Ones(1);
    return out;
  }

  // peel one basic factor and recurse on the remainder
  int which;
  Weight rest = w;
  if (w.c > 0) {
    which = 2;
    --rest.c;
  } else if (w.a > 0) {
    which = 0;
    --rest.a;
  } else {
    which = 1;
    --rest.b;
  }
  static const std::array<Eigen::VectorXcd (*)(), 3> tops = {vector_top, rotation_top,
                                                             spin_top};
  const Irrep& inner = get_irrep(rest);

  // tangent generator images on the basic factors
  static const std::array<std::array<Eigen::MatrixXd, 7>, 3> basic_tan = [] {
    std::array<std::array<Eigen::MatrixXd, 7>, 3> t;
    const auto& model = ModelData::get();
    for (int which2 = 0; which2 < 3; ++which2) {
      for (int i = 0; i < 7; ++i) {
        auto c = detail::so7_coords(model.m[i]);
        const auto& gens = basic_gens(which2);
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(gens[0].rows(), gens[0].cols());
        for (int k = 0; k < 21; ++k)
          if (c[k] != 0.0) g += c[k] * gens[k];
        t[which2][i] = g;
      }
    }
    return t;
  }();

  std::vector<Slot> slots;
  slots.push_back({int(basic_gens(which)[0].rows()), &basic_gens(which),
                   &basic_tan[which]});
  if (inner.dim > 1) slots.push_back({inner.dim, &inner.gen, &inner.tangent_});
  const long ambient = slots.size() == 1 ? slots[0].dim
                                         : long(slots[0].dim) * slots[1].dim;

  Eigen::VectorXcd top = tops[which]();
  if (inner.dim > 1) {
    Eigen::VectorXcd next(ambient);
    for (long i = 0; i < top.size(); ++i)
      next.segment(i * inner.dim, inner.dim) = top[i] * inner.top;
    top = next;
  }

  auto apply = [&](const Eigen::MatrixXd& factor0, const Eigen::MatrixXd* factor1,
                   const Eigen::MatrixXd& block) {
    long right = factor1 ? factor1->rows() : 1;
    Eigen::MatrixXd out = apply_slot(block, factor0, 1, slots[0].dim, right);
    if (factor1) out += apply_slot(block, *factor1, slots[0].dim, right, 1);
    return out;
  };
  auto apply_gen = [&](int k, const Eigen::MatrixXd& block) {
    return apply((*slots[0].gen)[k], slots.size() > 1 ? &(*slots[1].gen)[k] : nullptr,
                 block);
  };
  auto apply_tan = [&](int i, const Eigen::MatrixXd& block) {
    return apply((*slots[0].tan)[i], slots.size() > 1 ? &(*slots[1].tan)[i] : nullptr,
                 block);
  };

  // cyclic closure of the top weight line under the tangent generators (they
  // generate the whole algebra), kept orthonormal by block reorthogonalization
  Eigen::MatrixXd basis(ambient, target);
  long n = 0;
  auto append = [&](Eigen::MatrixXd cand) {
    if (cand.cols() == 0) return Eigen::MatrixXd(ambient, 0);
    for (int round = 0; round < 2; ++round) {
      for (int pass = 0; pass < 2; ++pass)
        if (n > 0)
          cand -= basis.leftCols(n) * (basis.leftCols(n).transpose() * cand);
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(cand);
      long rank = 0;
      const auto& r = qr.matrixR();
      for (long k = 0; k < std::min(cand.rows(), cand.cols()); ++k)
        if (std::abs(r(k, k)) > 1e-8) ++rank;
      cand = qr.householderQ() * Eigen::MatrixXd::Identity(ambient, rank);
      // second round only if the fresh block drifted against the basis
      if (n == 0 || cand.cols() == 0 ||
          (basis.leftCols(n).transpose() * cand).cwiseAbs().maxCoeff() < 1e-11)
        break;
    }
    if (n + cand.cols() > target)
      throw std::runtime_error("irrep construction: closure exceeds predicted dim");
    basis.middleCols(n, cand.cols()) = cand;
    n += cand.cols();
    return cand;
  };

  Eigen::MatrixXd seed(ambient, 2);
  seed.col(0) = top.real();
  seed.col(1) = top.imag();
  Eigen::MatrixXd frontier = append(seed);
  while (frontier.cols() > 0 && n < target) {
    Eigen::MatrixXd cand(ambient, 7 * frontier.cols());
    for (int i = 0; i < 7; ++i)
      cand.middleCols(i * frontier.cols(), frontier.cols()) = apply_tan(i, frontier);
    frontier = append(cand);
  }
  if (n != target)
    throw std::runtime_error("irrep construction: closure dimension " +
                             std::to_string(n) + " != predicted " +
                             std::to_string(target));

  Irrep out;
  out.weight = w;
  out.dim = int(target);
  for (int k = 0; k < 21; ++k) out.gen[k] = basis.transpose() * apply_gen(k, basis);
  out.top = basis.transpose() * top.real() +
            std::complex<double>(0, 1) * (basis.transpose() * top.imag());

  // structural checks on random vectors: skewness, bracket compatibility,
  // scalar Casimir
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1, 1);
  auto random_skew = [&] {
    Endo<double> z;
    for (int i = 0; i < 7; ++i)
      for (int j = i + 1; j < 7; ++j) {
        z(i, j) = unif(rng);
        z(j, i) = -z(i, j);
      }
    return z;
  };
  double worst = 0;
  for (int k = 0; k < 21; ++k)
    worst = std::max(worst, (out.gen[k] + out.gen[k].transpose()).cwiseAbs().maxCoeff());
  const double cas = casimir_scalar(w);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd v = Eigen::VectorXd::NullaryExpr(target, [&](Eigen::Index) {
      return unif(rng);
    });
    Endo<double> z1 = random_skew(), z2 = random_skew();
    Eigen::MatrixXd r1 = out.act(z1), r2 = out.act(z2);
    Endo<double> bracket = z1 * z2 - z2 * z1;
    Eigen::VectorXd lhs = r1 * (r2 * v) - r2 * (r1 * v);
    worst = std::max(worst, (lhs - out.act(bracket) * v).cwiseAbs().maxCoeff() /
                                (1 + v.norm()));
    Eigen::VectorXd cv = Eigen::VectorXd::Zero(target);
    for (int k = 0; k < 21; ++k) cv += out.gen[k] * (out.gen[k] * v);
    worst = std::max(worst, (cv + cas * v).cwiseAbs().maxCoeff() / (1 + v.norm()));
  }
  if (worst > 1e-8)
    throw std::runtime_error("irrep construction: structural residual " +
                             std::to_string(worst));

  out.casimir = cas;
  for (int i = 0; i < 7; ++i)
    out.tangent_[i] = basis.transpose() * apply_tan(i, basis);
  return out;
}

const Irrep& get_irrep(const Weight& w) {
  static std::map<Weight, Irrep> cache;
  auto it = cache.find(w);
  if (it == cache.end()) it = cache.emplace(w, build_irrep(w)).first;
  return it->second;
}

}  // namespace npg2::pw
