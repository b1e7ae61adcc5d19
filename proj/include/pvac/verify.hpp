#pragma once

#include <string>
#include <vector>

namespace pvac {

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the invariant suite on small grids; randomized properties draw from `seed`.
std::vector<PropertyResult> run_verify(unsigned long seed = 1);

}  // namespace pvac
