#include "qcext/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qcext {

const char* to_string(Construction c) {
  switch (c) {
    case Construction::ahlfors: return "ahlfors";
    case Construction::ahlfors_weill: return "ahlfors_weill";
    case Construction::harmonic_lambda: return "harmonic_lambda";
    case Construction::teichmuller: return "teichmuller";
  }
  return "unknown";
}

Construction construction_from_string(const std::string& name) {
  for (auto c : {Construction::ahlfors, Construction::ahlfors_weill,
                 Construction::harmonic_lambda, Construction::teichmuller}) {
    if (name == to_string(c)) return c;
  }
  throw ParameterError("unknown construction '" + name + "'");
}

CriterionKind governing_criterion(Construction c) {
  switch (c) {
    case Construction::ahlfors: return CriterionKind::ahlfors_sigma;
    case Construction::ahlfors_weill: return CriterionKind::nehari;
    case Construction::harmonic_lambda: return CriterionKind::main_harmonic_sigma;
    case Construction::teichmuller: return CriterionKind::teichmuller;
  }
  return CriterionKind::ahlfors_sigma;
}

std::optional<double> PlaneExtension::k_hat() const {
  if (!report_) return std::nullopt;
  return report_->k_hat;
}

complex PlaneExtension::interior(complex z) const { return map_.value(z); }

complex PlaneExtension::u_term(complex xi) const {
  const complex h1 = map_.h_derivative(1).evaluate(xi);
  if (construction_ == Construction::ahlfors_weill) {
    const complex h2 = map_.h_derivative(2).evaluate(xi);
    if (h1 == complex{}) {
      throw PointError(PointError::Kind::critical_point, xi, "phi' vanishes");
    }
    const double w = 1.0 - std::norm(xi);
    return w * h1 / (std::conj(xi) - 0.5 * w * (h2 / h1));
  }

  const complex s = weight_.sigma(xi);
  if (s == complex{}) throw PointError(PointError::Kind::pole, xi, "sigma vanishes");
  complex u = h1 / s;
  switch (construction_) {
    case Construction::harmonic_lambda:
      if (parameter_ != complex{} && !map_.is_analytic()) {
        u += parameter_ * std::conj(map_.g_derivative(1).evaluate(xi)) / std::conj(s);
      }
      break;
    case Construction::teichmuller:
      if (parameter_ != complex{}) u += parameter_ * std::conj(h1) / std::conj(s);
      break;
    default:
      break;
  }
  return u;
}

complex PlaneExtension::exterior(complex z) const {
  const complex xi = 1.0 / std::conj(z);
  return interior(xi) + u_term(xi);
}

complex PlaneExtension::evaluate(complex z) const {
  const double r = std::abs(z);
  if (r == 1.0) {
    throw PointError(PointError::Kind::boundary_point, z,
                     "the unit circle is reached through boundary_trace");
  }
  if (r < 1.0) return interior(z);
  if (r > r_max_) {
    throw PointError(PointError::Kind::out_of_range, z,
                     "exterior evaluation is limited to |z| <= " +
                         std::to_string(r_max_));
  }
  return exterior(z);
}

PlaneExtension build_extension(Construction c, const HarmonicMap& f,
                               std::optional<SigmaWeight> weight,
                               complex parameter,
                               const ExtensionOptions& options) {
  if (!(options.r_max > 1.0)) throw ParameterError("r_max must exceed 1");

  HarmonicMap map = f;
  switch (c) {
    case Construction::ahlfors:
    case Construction::ahlfors_weill:
      if (!f.is_analytic()) {
        throw ParameterError(std::string(to_string(c)) +
                             " extends analytic maps only (g must vanish)");
      }
      map = f.with_lambda(1.0);
      parameter = 0.0;
      break;
    case Construction::harmonic_lambda:
      map = f.with_lambda(parameter);
      break;
    case Construction::teichmuller:
      map = HarmonicMap::teichmuller(f.h(), parameter);
      break;
  }

  if (!weight) {
    weight = c == Construction::ahlfors_weill
                 ? make_weight({WeightKind::ahlfors_weill, {}, {}, {}, {}, {}}, &map)
                 : becker_weight();
  }

  PlaneExtension e(c, map, std::move(*weight));
  e.parameter_ = parameter;
  e.r_max_ = options.r_max;
  if (c == Construction::harmonic_lambda) {
    // the criterion is read on f itself; f_lambda inherits it
    e.omega_sup_ = 0.0;
  } else if (c == Construction::teichmuller) {
    e.omega_sup_ = std::abs(parameter);
  }

  if (options.check) {
    const HarmonicMap& subject = c == Construction::harmonic_lambda ? f : map;
    const Criterion cr =
        make_criterion(governing_criterion(c), subject,
                       needs_weight(governing_criterion(c))
                           ? std::optional<SigmaWeight>(e.weight_)
                           : std::nullopt);
    e.report_ = sup_ratio(cr, options.grid, 1.0, options.sup);
    e.certified_ = e.report_->pass;
    if (c == Construction::harmonic_lambda) {
      e.omega_sup_ = e.report_->omega_sup.value_or(0.0);
    }
  }
  return e;
}

BoundaryTrace boundary_trace(const PlaneExtension& e, std::size_t n,
                             double epsilon) {
  if (n < 16) throw ParameterError("boundary trace needs at least 16 samples");
  if (!(epsilon > 0.0) || epsilon > 1e-2) {
    throw ParameterError("boundary trace offset must lie in (0, 1e-2]");
  }
  BoundaryTrace t;
  t.epsilon = epsilon;
  t.theta.resize(n);
  t.inner.resize(n);
  t.outer.resize(n);
  t.gap.resize(n);
  parallel_blocks(n, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const double theta = 2.0 * std::numbers::pi * double(k) / double(n);
      t.theta[k] = theta;
      try {
        t.inner[k] = e.evaluate(std::polar(1.0 - epsilon, theta));
        t.outer[k] = e.evaluate(std::polar(1.0 + epsilon, theta));
      } catch (const PointError& err) {
        throw PointError(err.kind(), err.point(),
                         std::string(err.what()) + " (trace angle " +
                             std::to_string(theta) + ")");
      }
      t.gap[k] = std::abs(t.outer[k] - t.inner[k]);
    }
  });
  t.max_gap = *std::max_element(t.gap.begin(), t.gap.end());
  return t;
}

double min_pairwise_distance(const std::vector<complex>& samples) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      best = std::min(best, std::abs(samples[i] - samples[j]));
    }
  }
  return best;
}

bool trace_injective(const BoundaryTrace& trace, double tol) {
  return min_pairwise_distance(trace.inner) > tol &&
         min_pairwise_distance(trace.outer) > tol;
}

std::vector<ExtensionSample> sample_extension(const PlaneExtension& e,
                                              const DiskGrid& interior,
                                              const AnnulusGrid& exterior) {
  std::vector<complex> points = interior.points();
  const std::size_t n_inner = points.size();
  const auto outer = exterior.points();
  points.insert(points.end(), outer.begin(), outer.end());

  std::vector<ExtensionSample> out(points.size());
  parallel_blocks(points.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = {points[i], e.evaluate(points[i]), i >= n_inner};
    }
  });
  return out;
}

}  // namespace qcext
