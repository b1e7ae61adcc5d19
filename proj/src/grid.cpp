#include "pvac/grid.hpp"

#include <string>

#include "pvac/errors.hpp"

namespace pvac {

Grid::Grid(int n1_, int n2_, int n3_) : n1(n1_), n2(n2_), n3(n3_) {
  if (n1 < 4 || n2 < 4 || n3 < 4)
    throw ContractViolation("grid needs at least 4 nodes per axis, got " + std::to_string(n1) + "x" +
                            std::to_string(n2) + "x" + std::to_string(n3));
  h1 = 1.0 / n1;
  h2 = 1.0 / n2;
  h3 = 1.0 / n3;
}

}  // namespace pvac
