#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcext {

using complex = std::complex<double>;

std::string format_point(complex z);

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// An error tied to a specific point of the plane (poles, branch points,
/// orientation failures, degenerate derivatives ...).
class PointError : public Error {
 public:
  enum class Kind {
    pole,
    branch_point,
    degenerate_map,
    critical_point,
    orientation,
    degenerate_normalizer,
    degenerate_derivative,
    non_univalent,
    boundary_point,
    out_of_range,
    evaluation,
  };

  PointError(Kind kind, complex point, const std::string& message)
      : Error(message + " at " + format_point(point)),
        kind_(kind),
        point_(point) {}

  Kind kind() const noexcept { return kind_; }
  complex point() const noexcept { return point_; }

 private:
  Kind kind_;
  complex point_;
};

const char* to_string(PointError::Kind kind);

/// Parameters outside the range a construction or formula accepts.
class ParameterError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcext
