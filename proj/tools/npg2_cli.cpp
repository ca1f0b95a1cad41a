// Batch driver for the verification suites and the spectral computations.
//
//   npg2 algebra     pointwise cross-product/form identities (exact or float)
//   npg2 curvature   curvature layer of the homogeneous model (exact or float)
//   npg2 spectra     blockwise kernels and Laplace spectra up to --max-level
//   npg2 theorem     blockwise certification of one main statement (--which A|B)
//   npg2 instability linear-instability certificate
//   npg2 all         everything above
//
// Exit code 0 iff every check passes, 1 on a failed check, 2 on a
// configuration or construction error (e.g. an indeterminate kernel rank).

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "npg2/homogeneous.hpp"
#include "npg2/identities.hpp"
#include "npg2/pw/spectral.hpp"

using njson = nlohmann::ordered_json;
using namespace npg2;

namespace {

struct Options {
  uint64_t seed = 7;
  int trials = 100;
  int max_level = 3;
  double tol = 1e-6;
  std::string backend = "exact";
  std::string out;
  std::string cache_dir;  // accepted for interface stability; builds are cached in memory
  std::string bundle;
  std::string which = "A";
};

struct Row {
  std::string name;
  std::string anchor;
  std::string weight;  // "(a,b,c)" or empty for global checks
  double residual = 0;
  bool pass = false;
};

std::string weight_tag(const pw::Weight& w) {
  return "(" + std::to_string(w.a) + "," + std::to_string(w.b) + "," +
         std::to_string(w.c) + ")";
}

// ---- anchors for the exact suites (their reports carry names only) --------

std::string anchor_of(const std::string& name) {
  static const std::map<std::string, std::string> table = {
      {"cross composition vs chi", "eq-2.6"},
      {"double cross symmetrization", "eq-2.7"},
      {"iterated contraction of phi", "eq-2.8"},
      {"phi wedge pair vs dual contraction", "eq-2.9"},
      {"sym action anticommutes with star on phi/psi", "eq-2.13"},
      {"cross action on phi and psi", "eq-2.14"},
      {"14-dim 2-form component annihilates phi", "eq-2.15"},
      {"frame sum: wedge of cross action on w", "eq-2.16"},
      {"frame sum: hook of cross action on w", "eq-2.17"},
      {"frame sum: cross action on H applied to frame", "eq-2.18"},
      {"frame sum: hook of cross action on gamma", "eq-2.19"},
      {"difference of curvature flavors", "sec-2.4"},
      {"round sphere has constant curvature one", "sec-6.1"},
      {"cyclic curvature sum vs chi", "eq-2.10"},
      {"curvature tensor symmetries", "sec-2.4"},
      {"Ricci and scalar normalizations", "sec-2.2"},
      {"spinor curvature endomorphism", "sec-2.4"},
      {"contracted spinor curvature, first order", "eq-3.2"},
      {"contracted spinor curvature, second order", "eq-3.3"},
      {"curvature endomorphism preserves the projectors", "sec-2.4"},
      {"canonical curvature annihilates the 3-form", "sec-2.2"},
      {"hodge star is an involution", "sec-2.3"},
      {"wedge product graded commutativity", "sec-2.3"},
      {"interior product is an antiderivation", "sec-2.3"},
      {"hodge pairing reproduces the inner product", "sec-2.3"},
  };
  auto it = table.find(name);
  return it == table.end() ? "sec-2" : it->second;
}

void append(std::vector<Row>& rows, const CheckReport& rep) {
  for (const auto& it : rep.items)
    rows.push_back({it.name, anchor_of(it.name), "", it.residual, it.pass});
}

void append(std::vector<Row>& rows, const std::vector<pw::CheckItem>& items,
            const std::string& weight = "") {
  for (const auto& it : items)
    rows.push_back({it.name, it.anchor, weight, it.residual, it.pass});
}

// ---- exterior-calculus invariants ------------------------------------------

template <class T>
CheckReport exterior_invariants(uint64_t seed, int trials, double tol) {
  CheckReport rep;
  auto worst = [](double& acc, double v) { acc = std::max(acc, v); };
  double r_invol = 0, r_comm = 0, r_antider = 0, r_isom = 0;

  Sampler base(seed);
  for (int t = 0; t < trials; ++t) {
    Sampler s = base.fork(uint64_t(t));
    for (int p = 0; p <= 7; ++p) {
      Form<T> u = s.form<T>(p);
      worst(r_invol, max_abs(hodge(hodge(u)) - u));
      for (int q = 0; p + q <= 7; ++q) {
        Form<T> v = s.form<T>(q);
        Form<T> uv = wedge(u, v), vu = wedge(v, u);
        if ((p * q) % 2) uv += vu; else uv -= vu;
        worst(r_comm, max_abs(uv));
      }
      if (p >= 1 && p <= 6) {
        Vec7<T> x = s.vector<T>();
        Form<T> v = s.form<T>(1);
        Form<T> lhs = interior(x, wedge(u, v));
        Form<T> rhs = wedge(interior(x, u), v);
        if (p % 2) rhs -= wedge(u, interior(x, v));
        else rhs += wedge(u, interior(x, v));
        worst(r_antider, max_abs(lhs - rhs));
      }
      Form<T> u2 = s.form<T>(p);
      Form<T> vol(7);
      vol[0] = form_inner(u, u2);
      worst(r_isom, max_abs(wedge(u, hodge(u2)) - vol));
    }
  }
  rep.add("hodge star is an involution", r_invol, tol);
  rep.add("wedge product graded commutativity", r_comm, tol);
  rep.add("interior product is an antiderivation", r_antider, tol);
  rep.add("hodge pairing reproduces the inner product", r_isom, tol);
  return rep;
}

// ---- subcommand bodies ------------------------------------------------------

void run_algebra(const Options& opt, std::vector<Row>& rows) {
  if (opt.backend == "exact") {
    append(rows, identity_suite<Rat>(opt.seed, opt.trials, 0.0));
    append(rows, exterior_invariants<Rat>(opt.seed, opt.trials, 0.0));
  } else {
    append(rows, identity_suite<double>(opt.seed, opt.trials, opt.tol));
    append(rows, exterior_invariants<double>(opt.seed, opt.trials, opt.tol));
  }
}

void run_curvature(const Options& opt, std::vector<Row>& rows) {
  if (opt.backend == "exact")
    append(rows, curvature_suite<Rat>(opt.seed, opt.trials, 0.0));
  else
    append(rows, curvature_suite<double>(opt.seed, opt.trials, opt.tol));
}

void run_identity_sweep(const Options& opt, std::vector<Row>& rows) {
  for (const pw::Weight& w : pw::enumerate_weights(opt.max_level))
    append(rows, pw::operator_identity_suite(w, 1e-8), weight_tag(w));
}

// Laplace spectrum of one bundle, multiplicities summed over weights.
std::vector<std::pair<double, long>> bundle_spectrum(const std::string& bundle,
                                                     int max_level, double tol) {
  static const std::vector<std::string> known = {
      "functions", "one_forms",  "two_forms",   "three_forms",
      "tensor2",   "spinors",    "spin_tensors"};
  if (std::find(known.begin(), known.end(), bundle) == known.end())
    throw std::invalid_argument("unknown bundle '" + bundle + "'");

  std::vector<std::pair<double, long>> evs;
  for (const pw::Weight& w : pw::enumerate_weights(max_level)) {
    Eigen::MatrixXd lap = pw::standard_op(w, "lap_" + bundle);
    long dim = pw::weyl_dim(w);
    for (auto [ev, m] : pw::clustered_spectrum(lap, tol)) evs.push_back({ev, m * dim});
  }
  std::sort(evs.begin(), evs.end());
  std::vector<std::pair<double, long>> merged;
  for (auto [ev, m] : evs) {
    if (!merged.empty() && std::abs(ev - merged.back().first) <= tol * std::max(1.0, std::abs(ev)))
      merged.back().second += m;
    else
      merged.push_back({ev, m});
  }
  return merged;
}

void run_spectra(const Options& opt, std::vector<Row>& rows, njson& extra) {
  if (!opt.bundle.empty()) {
    auto spectrum = bundle_spectrum(opt.bundle, opt.max_level, opt.tol);
    njson arr = njson::array();
    for (auto [ev, m] : spectrum) arr.push_back({{"eigenvalue", ev}, {"multiplicity", m}});
    extra["bundle"] = opt.bundle;
    extra["spectrum"] = arr;
    std::cout << "Laplace spectrum on " << opt.bundle << " up to level "
              << opt.max_level << ":\n";
    for (auto [ev, m] : spectrum)
      std::cout << "  eigenvalue " << ev << "  multiplicity " << m << "\n";
    return;
  }

  pw::SpectralReport rep = pw::spectral_report(opt.max_level, opt.tol);
  njson weights = njson::array();
  for (const auto& row : rep.rows) {
    weights.push_back({{"weight", weight_tag(row.w)},
                       {"rep_dim", row.rep_dim},
                       {"killing", row.killing},
                       {"d1", row.d1},
                       {"d3", row.d3},
                       {"rgamma", row.rgamma},
                       {"ker_q", row.ker_q},
                       {"rh", row.rh}});
    append(rows, row.checks, weight_tag(row.w));
  }
  extra["weights"] = weights;
  extra["totals"] = {{"killing", rep.total_killing}, {"d1", rep.total_d1},
                     {"d3", rep.total_d3},           {"rgamma", rep.total_rgamma},
                     {"ker_q", rep.total_ker_q},     {"rh", rep.total_rh}};
  std::cout << "section totals up to level " << opt.max_level << ": killing spinors "
            << rep.total_killing << ", killing one-forms " << rep.total_d1
            << ", deformation three-forms " << rep.total_d3
            << ", rarita-schwinger fields " << rep.total_ker_q << "\n";
}

void run_theorem(const Options& opt, std::vector<Row>& rows) {
  if (opt.which != "A" && opt.which != "B")
    throw std::invalid_argument("--which must be A or B");
  append(rows, pw::theorem_check(opt.which[0], opt.max_level, opt.tol));
}

void run_instability(const Options& opt, std::vector<Row>& rows) {
  append(rows, pw::instability_certificate(opt.max_level, opt.tol));
}

// ---- report assembly --------------------------------------------------------

int finish(const std::string& sub, const Options& opt, std::vector<Row>& rows,
           const njson& extra) {
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.name, a.weight) < std::tie(b.name, b.weight);
  });

  long failed = 0;
  for (const auto& r : rows)
    if (!r.pass) ++failed;

  njson report;
  report["report_version"] = 1;
  report["subcommand"] = sub;
  report["config"] = {{"seed", opt.seed},     {"trials", opt.trials},
                      {"max_level", opt.max_level}, {"tolerance", opt.tol},
                      {"backend", opt.backend}};
  njson checks = njson::array();
  for (const auto& r : rows) {
    njson c;
    c["name"] = r.name;
    c["paperAnchor"] = r.anchor;
    c["status"] = r.pass ? "pass" : "fail";
    c["residual"] = r.residual;
    c["details"] = r.weight.empty() ? "" : "weight " + r.weight;
    checks.push_back(std::move(c));
  }
  report["checks"] = std::move(checks);
  for (const auto& [k, v] : extra.items()) report[k] = v;
  report["summary"] = {{"total", rows.size()}, {"passed", long(rows.size()) - failed},
                       {"failed", failed}};

  if (!opt.out.empty()) {
    std::ofstream f(opt.out);
    if (!f) throw std::runtime_error("cannot write " + opt.out);
    f << report.dump(2) << "\n";
  }

  for (const auto& r : rows)
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
              << (r.weight.empty() ? "" : " " + r.weight) << "  [" << r.anchor
              << "]  residual " << r.residual << "\n";
  std::cout << rows.size() << " checks, " << failed << " failed\n";
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification driver for nearly parallel G2 geometry on the round 7-sphere"};
  app.require_subcommand(1);

  Options opt;
  for (const char* name : {"algebra", "curvature", "spectra", "theorem",
                           "instability", "all"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--seed", opt.seed, "RNG seed for the pointwise suites");
    sub->add_option("--trials", opt.trials, "random trials per pointwise check")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-level", opt.max_level, "largest weight level a+b+c")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", opt.tol, "kernel/float tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--backend", opt.backend, "exact | float")
        ->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--out", opt.out, "write the JSON report here");
    sub->add_option("--cache-dir", opt.cache_dir, "representation cache directory");
    if (std::string(name) == "spectra")
      sub->add_option("--bundle", opt.bundle,
                      "report the Laplace spectrum of one bundle (functions, "
                      "one_forms, two_forms, three_forms, tensor2, spinors, "
                      "spin_tensors)");
    if (std::string(name) == "theorem")
      sub->add_option("--which", opt.which, "A or B");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  std::vector<Row> rows;
  njson extra;
  try {
    if (sub == "algebra") run_algebra(opt, rows);
    else if (sub == "curvature") run_curvature(opt, rows);
    else if (sub == "spectra") run_spectra(opt, rows, extra);
    else if (sub == "theorem") run_theorem(opt, rows);
    else if (sub == "instability") run_instability(opt, rows);
    else {
      run_algebra(opt, rows);
      run_curvature(opt, rows);
      run_identity_sweep(opt, rows);
      run_spectra(opt, rows, extra);
      run_theorem(opt, rows);
      Options optb = opt;
      optb.which = "B";
      run_theorem(optb, rows);
      run_instability(opt, rows);
    }
    return finish(sub, opt, rows, extra);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
