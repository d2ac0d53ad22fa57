#pragma once

#include <stdexcept>
#include <string>

namespace gns {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct PointNotInSet : Error {
  using Error::Error;
};
struct PointNotOnGraph : Error {
  using Error::Error;
};
struct ScriptViolation : Error {
  using Error::Error;
};
struct Unsupported : Error {
  using Error::Error;
};
struct OutsideStartRegion : Error {
  using Error::Error;
};
struct NotDescentDirection : Error {
  using Error::Error;
};
struct LineSearchStalled : Error {
  using Error::Error;
};
struct NotDiagonal : Error {
  using Error::Error;
};
struct NotDiagonalizable : Error {
  using Error::Error;
};
struct EnumerationCapExceeded : Error {
  using Error::Error;
};
struct NonFiniteIterate : Error {
  using Error::Error;
};

}  // namespace gns
