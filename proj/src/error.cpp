#include "qcext/error.hpp"

#include <cstdio>

namespace qcext {

std::string format_point(complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", z.real(), z.imag());
  return buf;
}

const char* to_string(PointError::Kind kind) {
  switch (kind) {
    case PointError::Kind::pole: return "pole";
    case PointError::Kind::branch_point: return "branch_point";
    case PointError::Kind::degenerate_map: return "degenerate_map";
    case PointError::Kind::critical_point: return "critical_point";
    case PointError::Kind::orientation: return "orientation";
    case PointError::Kind::degenerate_normalizer: return "degenerate_normalizer";
    case PointError::Kind::degenerate_derivative: return "degenerate_derivative";
    case PointError::Kind::non_univalent: return "non_univalent";
    case PointError::Kind::boundary_point: return "boundary_point";
    case PointError::Kind::out_of_range: return "out_of_range";
    case PointError::Kind::evaluation: return "evaluation";
  }
  return "unknown";
}

}  // namespace qcext
