#include "qcext/grid.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

namespace qcext {

namespace {
std::atomic<unsigned> g_thread_count{0};
}

void set_thread_count(unsigned count) { g_thread_count = count; }

unsigned thread_count() {
  const unsigned n = g_thread_count.load();
  if (n != 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

void DiskGrid::validate() const {
  if (n_radial < 4 || n_radial % 2 != 0) {
    throw ParameterError("disk grid needs an even radial count >= 4");
  }
  if (n_angular < 4) throw ParameterError("disk grid needs n_angular >= 4");
  if (!(boundary_exponent > 0.0) || boundary_exponent > 50.0) {
    throw ParameterError("disk grid boundary exponent must lie in (0, 50]");
  }
}

std::vector<double> DiskGrid::radii() const {
  validate();
  const std::size_t m = n_radial / 2;
  std::vector<double> r;
  r.reserve(2 * m);
  for (std::size_t j = 1; j < m; ++j) r.push_back(double(j) / double(m));
  for (std::size_t j = 1; j <= m; ++j) {
    r.push_back(1.0 - std::exp2(-boundary_exponent * double(j) / double(m)));
  }
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

double DiskGrid::max_radius() const { return 1.0 - std::exp2(-boundary_exponent); }

std::size_t DiskGrid::size() const {
  return radii().size() * n_angular + (include_center ? 1 : 0);
}

std::vector<complex> DiskGrid::points() const {
  const auto r = radii();
  std::vector<complex> pts;
  pts.reserve(r.size() * n_angular + 1);
  if (include_center) pts.emplace_back(0.0, 0.0);
  for (double radius : r) {
    for (std::size_t k = 0; k < n_angular; ++k) {
      const double theta = 2.0 * std::numbers::pi * double(k) / double(n_angular);
      pts.push_back(std::polar(radius, theta));
    }
  }
  return pts;
}

DiskGrid DiskGrid::refined() const {
  DiskGrid g = *this;
  g.n_radial *= 2;
  g.n_angular *= 2;
  return g;
}

void AnnulusGrid::validate() const {
  if (!(r_min > 0.0) || !(r_max >= r_min)) {
    throw ParameterError("annulus grid needs 0 < r_min <= r_max");
  }
  if (n_radial < 1 || n_angular < 4) {
    throw ParameterError("annulus grid needs n_radial >= 1 and n_angular >= 4");
  }
}

std::vector<double> AnnulusGrid::radii() const {
  validate();
  std::vector<double> r(n_radial);
  for (std::size_t i = 0; i < n_radial; ++i) {
    const double t = n_radial == 1 ? 0.0 : double(i) / double(n_radial - 1);
    r[i] = geometric ? r_min * std::pow(r_max / r_min, t)
                     : r_min + (r_max - r_min) * t;
  }
  return r;
}

std::vector<complex> AnnulusGrid::points() const {
  std::vector<complex> pts;
  pts.reserve(n_radial * n_angular);
  for (double radius : radii()) {
    for (std::size_t k = 0; k < n_angular; ++k) {
      const double theta = 2.0 * std::numbers::pi * double(k) / double(n_angular);
      pts.push_back(std::polar(radius, theta));
    }
  }
  return pts;
}

}  // namespace qcext
