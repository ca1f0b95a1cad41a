#pragma once

#include <string>
#include <vector>

namespace npg2 {

/// One named residual check. `residual` is the max absolute deviation seen
/// over all trials; `tol` is the acceptance threshold it was judged against
/// (0 for exact-backend checks).
struct CheckItem {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::vector<CheckItem> items;

  void add(std::string name, double residual, double tol) {
    items.push_back({std::move(name), residual, tol, residual <= tol});
  }

  bool all_pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
};

}  // namespace npg2
