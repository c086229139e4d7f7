#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kripke {

// Base for every error the library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SyntaxError : Error {
  SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

  std::size_t offset;
  std::vector<std::string> expected;
};

// A configurable size/budget cap was exceeded. `required` is the size the
// operation would have needed (saturating), `limit` the cap in force.
struct ResourceError : Error {
  ResourceError(const std::string& what, unsigned long long required, unsigned long long limit);

  unsigned long long required;
  unsigned long long limit;
};

// Invalid frame data: cycles, out-of-range points, too many points.
struct FrameError : Error {
  using Error::Error;
};

struct CatalogError : Error {
  using Error::Error;
};

}  // namespace kripke
