#pragma once

#include <memory>
#include <optional>

#include "qcext/cxexpr.hpp"
#include "qcext/grid.hpp"

namespace qcext {

/// Values of h, g and their first three derivatives at one point.
struct MapJet {
  complex h[4];
  complex g[4];
};

/// Second complex dilatation omega = g'/h' and its first two derivatives.
struct DilatationJet {
  complex omega;
  complex d1;
  complex d2;
};

/// A sense-preserving harmonic mapping f = h + conj(g) of the unit disk,
/// together with the family parameter lambda of f_lambda = h + lambda conj(g).
///
/// In Teichmueller form f = h + alpha conj(h); the canonical co-analytic part
/// is then g = conj(alpha) h and omega is the constant conj(alpha).
class HarmonicMap {
 public:
  enum class Form { hg, teichmuller };

  static HarmonicMap hg(cx::Expr h, cx::Expr g, complex lambda = 1.0);
  static HarmonicMap analytic(cx::Expr phi);
  static HarmonicMap teichmuller(cx::Expr h, complex alpha);

  const cx::Expr& h() const { return d_->h[0]; }
  const cx::Expr& g() const { return d_->g[0]; }
  /// order-th derivative expression, 0 <= order <= 3.
  const cx::Expr& h_derivative(int order) const { return d_->h[order]; }
  const cx::Expr& g_derivative(int order) const { return d_->g[order]; }

  complex lambda() const { return lambda_; }
  Form form() const { return form_; }
  complex alpha() const { return alpha_; }
  bool is_analytic() const { return d_->g[0].is_zero(); }

  /// Same h and g with another family parameter.
  HarmonicMap with_lambda(complex lambda) const;
  /// f_lambda = h + lambda conj(g) as a map in its own right (g -> conj(lambda) g).
  HarmonicMap family_member(complex lambda) const;

  /// f_lambda(z) = h(z) + lambda conj(g(z)); the co-analytic term is skipped
  /// when lambda = 0.
  complex value(complex z) const;
  MapJet jet(complex z, int order = 2) const;

 private:
  struct Derivatives {
    cx::Expr h[4];
    cx::Expr g[4];
  };
  HarmonicMap(cx::Expr h, cx::Expr g, complex lambda, Form form, complex alpha);

  std::shared_ptr<const Derivatives> d_;
  complex lambda_{1.0};
  Form form_ = Form::hg;
  complex alpha_{};
};

/// omega = g'/h'; with apply_lambda the dilatation of f_lambda, conj(lambda) omega.
cx::Expr dilatation(const HarmonicMap& f, bool apply_lambda = false);

/// omega, omega', omega'' from a jet of order >= 2 (order 3 for omega'').
DilatationJet dilatation_jet(const MapJet& jet, complex z);
DilatationJet dilatation_at(const HarmonicMap& f, complex z, int order = 2);

/// P = phi''/phi' and S = P' - P^2/2 for an analytic phi.
cx::Expr pre_schwarzian_analytic(const cx::Expr& phi);
cx::Expr schwarzian_analytic(const cx::Expr& phi);
/// Evaluates P_phi / S_phi from a jet, raising critical_point where phi' = 0.
complex pre_schwarzian_value(const complex (&phi)[4], complex z);
complex schwarzian_value(const complex (&phi)[4], complex z);

/// P_f = P_h - conj(omega) omega' / (1 - |omega|^2).
complex harmonic_pre_schwarzian(const HarmonicMap& f, complex z);
/// S_f = S_h + conj(omega)/(1-|omega|^2) (P_h omega' - omega'')
///       - 3/2 (conj(omega) omega' / (1-|omega|^2))^2.
complex harmonic_schwarzian(const HarmonicMap& f, complex z);
complex harmonic_pre_schwarzian(const MapJet& jet, complex z);
complex harmonic_schwarzian(const MapJet& jet, complex z);

/// P_f as an expression tree in z and conj(z).
cx::Expr harmonic_pre_schwarzian_expr(const HarmonicMap& f);

/// f_a = f + a conj(f): analytic part h + a g, co-analytic part g + conj(a) h.
HarmonicMap affine_transform(const HarmonicMap& f, complex a);

/// Throws PointError(orientation) at the first grid point with |g'| >= |h'|.
void check_sense_preserving(const HarmonicMap& f, const DiskGrid& grid);

/// Grid estimate of ||omega||_inf.
double omega_sup(const HarmonicMap& f, const DiskGrid& grid);

/// Grid estimates of sup |P_phi| (1-|z|^2) and sup |S_phi| (1-|z|^2)^2.
double pre_schwarzian_norm(const cx::Expr& phi, const DiskGrid& grid);
double schwarzian_norm(const cx::Expr& phi, const DiskGrid& grid);

struct MobiusBound {
  double lower;
  double value;
  double upper;
};

/// Bounds on |T(z)| for T(z) = (z + |eps|)/(1 + |eps| z).
MobiusBound mobius_bound_check(complex epsilon, complex z);

/// delta = (1 + k w)/(k + w), the radius up to which h + a g stays univalent;
/// +infinity when k = w = 0.
double delta_univalence_radius(double k, double omega_sup);

struct DividedDifference {
  double value;
  complex alpha;
  complex beta;
};

/// max over pairs of |g(a) - g(b)| / |h(a) - h(b)| for n equispaced points on
/// the circle of radius 1 - 1e-9.
DividedDifference divided_difference_sup(const HarmonicMap& f,
                                         std::size_t samples);

}  // namespace qcext
