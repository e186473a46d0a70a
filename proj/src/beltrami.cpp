#include "qcext/beltrami.hpp"

#include <cmath>

namespace qcext {

namespace {

constexpr double kDegenerate = 1e-14;

struct GDerivatives {
  complex dz;
  complex dzbar;
};

// Wirtinger derivatives of G = f_lambda + U at a point z of the disk.
GDerivatives g_derivatives(const PlaneExtension& e, complex z) {
  const HarmonicMap& f = e.map();
  const MapJet j = f.jet(z, 2);
  const WeightValues s = e.weight().at(z);
  if (s.value == complex{}) throw PointError(PointError::Kind::pole, z, "sigma vanishes");
  const complex s2 = s.value * s.value;

  GDerivatives d;
  d.dz = j.h[1] + (j.h[2] * s.value - j.h[1] * s.dz) / s2;
  d.dzbar = -j.h[1] * s.dzbar / s2;

  const complex lambda = f.lambda();
  if (lambda != complex{} && !f.is_analytic()) {
    const complex sb = std::conj(s.value);
    const complex sb2 = sb * sb;
    const complex g1b = std::conj(j.g[1]);
    const complex g2b = std::conj(j.g[2]);
    d.dz -= lambda * g1b * std::conj(s.dzbar) / sb2;
    d.dzbar += lambda * g1b + lambda * (g2b * sb - g1b * std::conj(s.dz)) / sb2;
  }
  return d;
}

complex reflect(complex w) { return 1.0 / std::conj(w); }

void require_exterior(complex w) {
  if (!(std::abs(w) > 1.0)) {
    throw PointError(PointError::Kind::out_of_range, w, "expected |w| > 1");
  }
}

}  // namespace

double mu_fd_step(complex z) {
  const double r = std::abs(z);
  return std::min(1e-6 * std::max(1.0, r), std::abs(r - 1.0) / 4.0);
}

complex mu_fd(const PlaneExtension& e, complex z) {
  const double h = mu_fd_step(z);
  if (!(h > 0.0)) {
    throw PointError(PointError::Kind::boundary_point, z,
                     "mu is not sampled on the unit circle");
  }
  const WeightValues d =
      fd_wirtinger([&e](complex p) { return e.evaluate(p); }, z, h);
  if (std::abs(d.dz) < 1e-12) {
    throw PointError(PointError::Kind::degenerate_derivative, z, "|F_z| < 1e-12");
  }
  return d.dzbar / d.dz;
}

complex mu_exterior(const PlaneExtension& e, complex w) {
  require_exterior(w);
  const complex z = reflect(w);
  const GDerivatives d = g_derivatives(e, z);
  if (std::abs(d.dzbar) < kDegenerate) {
    throw PointError(PointError::Kind::degenerate_derivative, w,
                     "G_zbar vanishes at the reflected point");
  }
  const complex phase = w / std::conj(w);
  return d.dz / d.dzbar * phase * phase;
}

complex teichmuller_eta(const PlaneExtension& e, complex z) {
  const MapJet j = e.map().jet(z, 2);
  const WeightValues s = e.weight().at(z);
  const complex ph = pre_schwarzian_value(j.h, z);
  const complex a = s.value * s.value + s.value * ph - s.dz;
  const complex q = s.value / std::conj(s.value);
  const complex b = std::conj(s.dzbar) * q * q * std::conj(j.h[1]) / j.h[1];
  if (std::abs(b) < kDegenerate) {
    throw PointError(PointError::Kind::degenerate_derivative, z,
                     "eta has a vanishing denominator");
  }
  return -a / b;
}

double mu_analytic_exterior(const PlaneExtension& e, complex w) {
  require_exterior(w);
  if (e.construction() == Construction::teichmuller) {
    const complex alpha = e.parameter();
    const complex eta = teichmuller_eta(e, reflect(w));
    const complex den = 1.0 + std::conj(alpha) * eta;
    if (std::abs(den) < kDegenerate) {
      throw PointError(PointError::Kind::degenerate_derivative, w,
                       "1 + conj(alpha) eta vanishes");
    }
    return std::abs((alpha + eta) / den);
  }
  const GDerivatives d = g_derivatives(e, reflect(w));
  if (std::abs(d.dzbar) < kDegenerate) {
    throw PointError(PointError::Kind::degenerate_derivative, w,
                     "G_zbar vanishes at the reflected point");
  }
  return std::abs(d.dz) / std::abs(d.dzbar);
}

complex omega_star(const HarmonicMap& f, const SigmaWeight& w, complex z) {
  if (f.is_analytic()) return 0.0;
  const DilatationJet d = dilatation_at(f, z);
  const WeightValues s = w.at(z);
  if (s.dzbar == complex{}) {
    throw PointError(PointError::Kind::degenerate_normalizer, z, "sigma_zbar vanishes");
  }
  return s.value / s.dzbar * d.d1 / (1.0 - std::norm(d.omega));
}

double rho_bound(double k, double lambda_abs, double omega_sup, double x) {
  if (!(k >= 0.0 && k < 1.0) || !(lambda_abs >= 0.0 && lambda_abs <= 1.0) ||
      !(omega_sup >= 0.0 && omega_sup < 1.0) || !(x >= 0.0 && x <= k)) {
    throw ParameterError("rho needs k, ||omega|| in [0,1), |lambda| in [0,1], x in [0,k]");
  }
  const double lw = lambda_abs * omega_sup;
  const double den = 1.0 - k * lw - (1.0 - omega_sup) * x;
  if (!(den > 0.0)) throw ParameterError("rho bound inapplicable: denominator <= 0");
  return (k + lw - (1.0 - omega_sup) * x) / den;
}

const char* to_string(KFormula f) {
  switch (f) {
    case KFormula::analytic: return "analytic";
    case KFormula::harmonic: return "harmonic";
    case KFormula::teichmuller: return "teichmuller";
  }
  return "unknown";
}

KValue k_formula(KFormula formula, const KParams& p) {
  if (!(p.k >= 0.0 && p.k < 1.0)) throw ParameterError("K formula needs k in [0,1)");
  double num = 0.0, den = 0.0;
  switch (formula) {
    case KFormula::analytic:
      num = 1.0 + p.k;
      den = 1.0 - p.k;
      break;
    case KFormula::harmonic: {
      if (!(p.lambda_abs >= 0.0 && p.lambda_abs <= 1.0) ||
          !(p.omega_sup >= 0.0 && p.omega_sup < 1.0)) {
        throw ParameterError("K formula needs |lambda| <= 1 and ||omega|| < 1");
      }
      const double lw = p.lambda_abs * p.omega_sup;
      num = 1.0 + p.k + lw * (1.0 - p.k);
      den = 1.0 - p.k - lw * (1.0 + p.k);
      break;
    }
    case KFormula::teichmuller:
      if (!(p.alpha_abs >= 0.0 && p.alpha_abs < 1.0)) {
        throw ParameterError("K formula needs |alpha| < 1");
      }
      num = (1.0 + p.k) * (1.0 + p.alpha_abs);
      den = (1.0 - p.k) * (1.0 - p.alpha_abs);
      break;
  }
  if (!(den > 0.0)) throw ParameterError("K formula hypotheses violated: denominator <= 0");
  const double K = num / den;
  return {K, (num - den) / (num + den)};
}

std::optional<KValue> extension_bound(const PlaneExtension& e, double k) {
  if (!(k >= 0.0 && k < 1.0)) return std::nullopt;
  switch (e.construction()) {
    case Construction::ahlfors:
    case Construction::ahlfors_weill:
      return k_formula(KFormula::analytic, {k});
    case Construction::harmonic_lambda: {
      const double w = e.omega_sup();
      if (!(w < 1.0) || !k_condition_check(k, w)) return std::nullopt;
      return k_formula(KFormula::harmonic, {k, std::abs(e.parameter()), w, 0.0});
    }
    case Construction::teichmuller:
      return k_formula(KFormula::teichmuller, {k, 1.0, 0.0, std::abs(e.parameter())});
  }
  return std::nullopt;
}

DilatationReport max_dilatation(const PlaneExtension& e, const DilatationGrids& grids) {
  const auto inner = grids.interior.points();
  const auto outer = grids.exterior.points();
  for (complex z : inner) {
    if (!(std::abs(z) < 1.0)) throw ParameterError("interior grid leaves the disk");
  }
  for (complex z : outer) {
    if (!(std::abs(z) > 1.0) || std::abs(z) > e.r_max()) {
      throw ParameterError("exterior grid leaves 1 < |z| <= r_max");
    }
  }

  DilatationReport r;
  const std::size_t n = inner.size() + outer.size();
  r.samples.resize(n);
  std::vector<double> analytic(outer.size());
  parallel_blocks(n, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const bool ext = i >= inner.size();
      const complex z = ext ? outer[i - inner.size()] : inner[i];
      r.samples[i] = {z, mu_fd(e, z), ext};
      if (ext) analytic[i - inner.size()] = mu_analytic_exterior(e, z);
    }
  });

  ArgMax in_max, out_max;
  std::optional<std::size_t> violation;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(r.samples[i].mu);
    (r.samples[i].exterior ? out_max : in_max).offer(a, i);
    if (a >= 1.0 && !violation) violation = i;
  }
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const double fd = std::abs(r.samples[inner.size() + i].mu);
    r.sup_mu_exterior_analytic = std::max(r.sup_mu_exterior_analytic, analytic[i]);
    r.oracle_gap = std::max(r.oracle_gap, std::abs(fd - analytic[i]));
  }

  if (!in_max.empty()) {
    r.sup_mu_interior = in_max.value;
    r.witnesses.push_back({"interior", r.samples[in_max.index].z, r.samples[in_max.index].mu});
  }
  if (!out_max.empty()) {
    r.sup_mu_exterior = out_max.value;
    r.witnesses.push_back({"exterior", r.samples[out_max.index].z, r.samples[out_max.index].mu});
  }
  if (violation) {
    r.quasiconformal = false;
    r.witnesses.push_back({"violation", r.samples[*violation].z, r.samples[*violation].mu});
  }

  r.k = e.k_hat();
  if (r.k) r.bound = extension_bound(e, *r.k);
  const double sup = std::max(r.sup_mu_interior, r.sup_mu_exterior);
  r.certified = e.certified() && r.quasiconformal && r.bound &&
                sup <= r.bound->ratio + kMuTolerance;
  return r;
}

}  // namespace qcext
