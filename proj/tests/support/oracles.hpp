#pragma once

// Reference computations for the tests. Nothing here calls the library's own
// derivative, sweep or closed-form code paths.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using complex = std::complex<double>;
using Field = std::function<complex(complex)>;

inline const complex I{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

struct Wirtinger {
  complex dz;
  complex dzbar;
};

// Fourth-order central differences along x and y, combined as
// f_z = (f_x - i f_y)/2 and f_zbar = (f_x + i f_y)/2.
inline Wirtinger wirtinger5(const Field& f, complex z, double h) {
  auto d = [&](complex dir) {
    return (-f(z + 2.0 * h * dir) + 8.0 * f(z + h * dir) - 8.0 * f(z - h * dir) +
            f(z - 2.0 * h * dir)) /
           (12.0 * h);
  };
  const complex fx = d(1.0);
  const complex fy = d(I);
  return {0.5 * (fx - I * fy), 0.5 * (fx + I * fy)};
}

inline double rel_err(complex got, complex want, double floor = 1.0) {
  return std::abs(got - want) / std::max(floor, std::abs(want));
}

// Uniform polar sweep: radii (j + 1/2)/nr, angles 2 pi a / na.
inline double dense_polar_sup(const std::function<double(complex)>& f, std::size_t nr,
                              std::size_t na, complex* witness = nullptr) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < nr; ++j) {
    const double r = (static_cast<double>(j) + 0.5) / static_cast<double>(nr);
    for (std::size_t a = 0; a < na; ++a) {
      const complex z = std::polar(r, 2.0 * kPi * static_cast<double>(a) / static_cast<double>(na));
      const double v = f(z);
      if (v > best) {
        best = v;
        if (witness) *witness = z;
      }
    }
  }
  return best;
}

// Sup of (1-r^2)|eps/(1+eps z)| over the disk for real eps in (0,1). The
// maximum sits on the negative axis where eps r^2 - 2r + eps = 0.
inline double becker_quadratic_sup(double eps) {
  const double r = (1.0 - std::sqrt(1.0 - eps * eps)) / eps;
  return (1.0 - r * r) * eps / (1.0 - eps * r);
}

inline std::vector<complex> random_disk_points(std::size_t n, double r_max, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<complex> out;
  out.reserve(n);
  while (out.size() < n) {
    const double r = r_max * std::sqrt(u(rng));
    const double t = 2.0 * kPi * u(rng);
    if (r > 1e-3) out.push_back(std::polar(r, t));
  }
  return out;
}

inline std::vector<complex> polar_points(double r_min, double r_max, std::size_t nr,
                                         std::size_t na) {
  std::vector<complex> out;
  for (std::size_t j = 0; j < nr; ++j) {
    const double r = nr == 1 ? r_min
                             : r_min + (r_max - r_min) * static_cast<double>(j) /
                                           static_cast<double>(nr - 1);
    for (std::size_t a = 0; a < na; ++a) {
      out.push_back(std::polar(r, 2.0 * kPi * (static_cast<double>(a) + 0.25) /
                                      static_cast<double>(na)));
    }
  }
  return out;
}

}  // namespace oracle
