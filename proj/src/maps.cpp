#include "qcext/maps.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace qcext {

namespace {

void require_holomorphic(const cx::Expr& e, const char* what) {
  if (!e.is_holomorphic()) {
    throw ParameterError(std::string(what) + " must be analytic (no conj)");
  }
}

double one_minus_abs2(complex w) { return 1.0 - std::norm(w); }

}  // namespace

HarmonicMap::HarmonicMap(cx::Expr h, cx::Expr g, complex lambda, Form form,
                         complex alpha)
    : lambda_(lambda), form_(form), alpha_(alpha) {
  require_holomorphic(h, "h");
  require_holomorphic(g, "g");
  auto d = std::make_shared<Derivatives>();
  d->h[0] = std::move(h);
  d->g[0] = std::move(g);
  for (int k = 1; k < 4; ++k) {
    d->h[k] = d->h[k - 1].dz();
    d->g[k] = d->g[k - 1].dz();
  }
  if (d->h[1].is_zero()) {
    throw PointError(PointError::Kind::degenerate_map, 0.0, "h' vanishes identically");
  }
  d_ = std::move(d);
}

HarmonicMap HarmonicMap::hg(cx::Expr h, cx::Expr g, complex lambda) {
  if (std::abs(lambda) > 1.0) throw ParameterError("|lambda| must be <= 1");
  return HarmonicMap(std::move(h), std::move(g), lambda, Form::hg, {});
}

HarmonicMap HarmonicMap::analytic(cx::Expr phi) {
  return HarmonicMap(std::move(phi), cx::Expr(), 1.0, Form::hg, {});
}

HarmonicMap HarmonicMap::teichmuller(cx::Expr h, complex alpha) {
  if (!(std::abs(alpha) < 1.0)) throw ParameterError("|alpha| must be < 1");
  cx::Expr g = cx::Expr(std::conj(alpha)) * h;
  return HarmonicMap(std::move(h), std::move(g), 1.0, Form::teichmuller, alpha);
}

HarmonicMap HarmonicMap::with_lambda(complex lambda) const {
  if (std::abs(lambda) > 1.0) throw ParameterError("|lambda| must be <= 1");
  HarmonicMap copy = *this;
  copy.lambda_ = lambda;
  return copy;
}

HarmonicMap HarmonicMap::family_member(complex lambda) const {
  if (std::abs(lambda) > 1.0) throw ParameterError("|lambda| must be <= 1");
  return HarmonicMap(h(), cx::Expr(std::conj(lambda)) * g(), 1.0, Form::hg, {});
}

complex HarmonicMap::value(complex z) const {
  complex v = h().evaluate(z);
  if (lambda_ != complex{} && !is_analytic()) {
    v += lambda_ * std::conj(g().evaluate(z));
  }
  return v;
}

MapJet HarmonicMap::jet(complex z, int order) const {
  MapJet j{};
  const bool has_g = !is_analytic();
  for (int k = 0; k <= order && k < 4; ++k) {
    j.h[k] = d_->h[k].evaluate(z);
    if (has_g) j.g[k] = d_->g[k].evaluate(z);
  }
  return j;
}

cx::Expr dilatation(const HarmonicMap& f, bool apply_lambda) {
  cx::Expr omega = f.g_derivative(1) / f.h_derivative(1);
  if (apply_lambda) omega = cx::Expr(std::conj(f.lambda())) * omega;
  return omega;
}

DilatationJet dilatation_jet(const MapJet& j, complex z) {
  const complex h1 = j.h[1];
  if (h1 == complex{}) {
    throw PointError(PointError::Kind::critical_point, z, "h' vanishes");
  }
  DilatationJet d;
  d.omega = j.g[1] / h1;
  d.d1 = (j.g[2] * h1 - j.g[1] * j.h[2]) / (h1 * h1);
  d.d2 = j.g[3] / h1 - (2.0 * j.g[2] * j.h[2] + j.g[1] * j.h[3]) / (h1 * h1) +
         2.0 * j.g[1] * j.h[2] * j.h[2] / (h1 * h1 * h1);
  return d;
}

DilatationJet dilatation_at(const HarmonicMap& f, complex z, int order) {
  return dilatation_jet(f.jet(z, std::max(order, 2)), z);
}

cx::Expr pre_schwarzian_analytic(const cx::Expr& phi) {
  require_holomorphic(phi, "phi");
  const cx::Expr d1 = phi.dz();
  return d1.dz() / d1;
}

cx::Expr schwarzian_analytic(const cx::Expr& phi) {
  const cx::Expr p = pre_schwarzian_analytic(phi);
  return p.dz() - cx::Expr(0.5) * cx::pow(p, 2.0);
}

complex pre_schwarzian_value(const complex (&phi)[4], complex z) {
  if (phi[1] == complex{}) {
    throw PointError(PointError::Kind::critical_point, z, "phi' vanishes");
  }
  return phi[2] / phi[1];
}

complex schwarzian_value(const complex (&phi)[4], complex z) {
  const complex p = pre_schwarzian_value(phi, z);
  const complex dp = phi[3] / phi[1] - p * p;
  return dp - 0.5 * p * p;
}

complex harmonic_pre_schwarzian(const MapJet& j, complex z) {
  const complex ph = pre_schwarzian_value(j.h, z);
  const DilatationJet d = dilatation_jet(j, z);
  const double den = one_minus_abs2(d.omega);
  if (!(den > 0.0)) {
    throw PointError(PointError::Kind::orientation, z, "|omega| >= 1");
  }
  return ph - std::conj(d.omega) * d.d1 / den;
}

complex harmonic_schwarzian(const MapJet& j, complex z) {
  const complex ph = pre_schwarzian_value(j.h, z);
  const complex sh = schwarzian_value(j.h, z);
  const DilatationJet d = dilatation_jet(j, z);
  const double den = one_minus_abs2(d.omega);
  if (!(den > 0.0)) {
    throw PointError(PointError::Kind::orientation, z, "|omega| >= 1");
  }
  const complex t = std::conj(d.omega) * d.d1 / den;
  return sh + std::conj(d.omega) / den * (ph * d.d1 - d.d2) - 1.5 * t * t;
}

complex harmonic_pre_schwarzian(const HarmonicMap& f, complex z) {
  return harmonic_pre_schwarzian(f.jet(z, 2), z);
}

complex harmonic_schwarzian(const HarmonicMap& f, complex z) {
  return harmonic_schwarzian(f.jet(z, 3), z);
}

cx::Expr harmonic_pre_schwarzian_expr(const HarmonicMap& f) {
  const cx::Expr ph = f.h_derivative(2) / f.h_derivative(1);
  const cx::Expr omega = dilatation(f);
  if (omega.is_zero()) return ph;
  const cx::Expr omega_bar = cx::conj(omega);
  return ph - omega_bar * omega.dz() / (cx::Expr(1.0) - omega * omega_bar);
}

HarmonicMap affine_transform(const HarmonicMap& f, complex a) {
  if (!(std::abs(a) < 1.0)) throw ParameterError("|a| must be < 1");
  if (a == complex{}) return f;
  return HarmonicMap::hg(f.h() + cx::Expr(a) * f.g(),
                         f.g() + cx::Expr(std::conj(a)) * f.h(), f.lambda());
}

namespace {

// |g'|/|h'| at z, +inf when h' = 0.
double dilatation_modulus(const HarmonicMap& f, complex z) {
  if (f.is_analytic()) return 0.0;
  const complex h1 = f.h_derivative(1).evaluate(z);
  const complex g1 = f.g_derivative(1).evaluate(z);
  if (h1 == complex{}) return std::numeric_limits<double>::infinity();
  return std::abs(g1) / std::abs(h1);
}

}  // namespace

void check_sense_preserving(const HarmonicMap& f, const DiskGrid& grid) {
  const auto pts = grid.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const complex h1 = f.h_derivative(1).evaluate(pts[i]);
    const complex g1 =
        f.is_analytic() ? complex{} : f.g_derivative(1).evaluate(pts[i]);
    if (!(std::abs(g1) < std::abs(h1))) {
      throw PointError(PointError::Kind::orientation, pts[i],
                       "map is not sense-preserving (|g'| >= |h'|)");
    }
  }
}

double omega_sup(const HarmonicMap& f, const DiskGrid& grid) {
  if (f.is_analytic()) return 0.0;
  const auto pts = grid.points();
  return sweep_max(pts, [&](complex z) { return dilatation_modulus(f, z); }).value;
}

double pre_schwarzian_norm(const cx::Expr& phi, const DiskGrid& grid) {
  const auto f = HarmonicMap::analytic(phi);
  const auto pts = grid.points();
  return sweep_max(pts, [&](complex z) {
           const MapJet j = f.jet(z, 2);
           return std::abs(pre_schwarzian_value(j.h, z)) * one_minus_abs2(z);
         })
      .value;
}

double schwarzian_norm(const cx::Expr& phi, const DiskGrid& grid) {
  const auto f = HarmonicMap::analytic(phi);
  const auto pts = grid.points();
  return sweep_max(pts, [&](complex z) {
           const MapJet j = f.jet(z, 3);
           const double w = one_minus_abs2(z);
           return std::abs(schwarzian_value(j.h, z)) * w * w;
         })
      .value;
}

MobiusBound mobius_bound_check(complex epsilon, complex z) {
  const double e = std::abs(epsilon), r = std::abs(z);
  if (!(e < 1.0) || !(r < 1.0)) {
    throw ParameterError("mobius bound needs |epsilon| < 1 and |z| < 1");
  }
  const complex t = (z + e) / (1.0 + e * z);
  return {std::abs(e - r) / (1.0 - e * r), std::abs(t), (e + r) / (1.0 + e * r)};
}

double delta_univalence_radius(double k, double w) {
  if (!(k >= 0.0 && k < 1.0) || !(w >= 0.0 && w < 1.0)) {
    throw ParameterError("delta needs k, ||omega|| in [0, 1)");
  }
  if (k + w == 0.0) return std::numeric_limits<double>::infinity();
  const double delta = (1.0 + k * w) / (k + w);
  const double slack = 1e-12 * std::max(1.0, delta);
  if (!(delta > 1.0) || (w > 0.0 && delta > 1.0 / w + slack)) {
    throw Error("delta outside (1, 1/||omega||]");
  }
  return delta;
}

DividedDifference divided_difference_sup(const HarmonicMap& f,
                                         std::size_t samples) {
  if (samples < 2) throw ParameterError("need at least two boundary samples");
  constexpr double radius = 1.0 - 1e-9;
  std::vector<complex> pts(samples), hv(samples), gv(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    pts[k] = std::polar(radius, 2.0 * std::numbers::pi * double(k) / double(samples));
    hv[k] = f.h().evaluate(pts[k]);
    gv[k] = f.g().evaluate(pts[k]);
  }
  DividedDifference best{0.0, pts[0], pts[1]};
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t j = i + 1; j < samples; ++j) {
      const double den = std::abs(hv[i] - hv[j]);
      if (den == 0.0) {
        throw PointError(PointError::Kind::non_univalent, pts[i],
                         "h takes the same value at two boundary samples");
      }
      const double ratio = std::abs(gv[i] - gv[j]) / den;
      if (ratio > best.value) best = {ratio, pts[i], pts[j]};
    }
  }
  return best;
}

}  // namespace qcext
