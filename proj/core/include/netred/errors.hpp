#pragma once

#include <stdexcept>
#include <string>

namespace netred {

/// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// polyrat
struct PoleAtPoint : Error {
  using Error::Error;
};
struct ZeroFunction : Error {
  using Error::Error;
};

// graph
struct AsymmetricInput : Error {
  using Error::Error;
};
struct OrderingViolated : Error {
  using Error::Error;
};
struct SingularInterior : Error {
  using Error::Error;
};

// spectral
struct NotSymmetric : Error {
  using Error::Error;
};
struct NotUnit : Error {
  using Error::Error;
};
struct SizeMismatch : Error {
  using Error::Error;
};
struct DegenerateRegime : Error {
  using Error::Error;
};

// dynamics / reduction
struct SingularAtPoint : Error {
  using Error::Error;
};
struct SingularH2 : Error {
  using Error::Error;
};
struct DegeneratePartition : Error {
  using Error::Error;
};

// sim
struct ImproperTransferFunction : Error {
  using Error::Error;
};
struct AlgebraicLoop : Error {
  using Error::Error;
};

// file / config I/O
struct InvalidConfig : Error {
  using Error::Error;
};
struct FileFormatError : Error {
  using Error::Error;
};

}  // namespace netred
