#ifndef PERRK_COMMON_HPP
#define PERRK_COMMON_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace perrk {

/// Flat vector of nodal conserved-variable coefficients.
/// Layout: cell-major, node-major within a cell, variable-minor.
using StateVector = std::vector<double>;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define PERRK_REQUIRE(cond, msg)          \
  do {                                    \
    if (!(cond)) throw ::perrk::Error(msg); \
  } while (0)

}  // namespace perrk

#endif
