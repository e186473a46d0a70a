#include "qcext/weights.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace qcext {

namespace {

constexpr int kRays = 16;
constexpr int kGrowthSteps = 20;
constexpr int kMonotoneTail = 5;
constexpr double kBlowUpThreshold = 1e5;
constexpr double kRatioFloor = 1e-12;

SigmaWeight::Evaluator evaluator(cx::Expr e) {
  return [e = std::move(e)](complex z) { return e.evaluate(z); };
}

// c conj(z) / (1 - z conj(z))
cx::Expr scaled_becker(complex c) {
  return cx::Expr(c) * becker_sigma_expr();
}

bool finite(complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

const char* to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::becker: return "becker";
    case WeightKind::ahlfors_c: return "ahlfors_c";
    case WeightKind::ahlfors_weill: return "ahlfors_weill";
    case WeightKind::schwarzian_v: return "schwarzian_v";
    case WeightKind::schwarzian_c: return "schwarzian_c";
    case WeightKind::custom: return "custom";
  }
  return "unknown";
}

WeightKind weight_kind_from_string(const std::string& name) {
  for (auto k : {WeightKind::becker, WeightKind::ahlfors_c,
                 WeightKind::ahlfors_weill, WeightKind::schwarzian_v,
                 WeightKind::schwarzian_c, WeightKind::custom}) {
    if (name == to_string(k)) return k;
  }
  throw ParameterError("unknown weight kind '" + name + "'");
}

cx::Expr becker_sigma_expr() {
  static const cx::Expr sigma = cx::Expr::parse("conj(z)/(1-z*conj(z))");
  return sigma;
}

double interior_fd_step(complex z) {
  const double r = std::abs(z);
  const double h = 1e-6 * std::max(1.0, r);
  return r < 1.0 ? std::min(h, (1.0 - r) / 4.0) : h;
}

WeightValues fd_wirtinger(const SigmaWeight::Evaluator& f, complex z, double h) {
  const complex ih{0.0, h};
  const complex fx = (f(z + h) - f(z - h)) / (2.0 * h);
  const complex fy = (f(z + ih) - f(z - ih)) / (2.0 * h);
  const complex i{0.0, 1.0};
  return {f(z), 0.5 * (fx - i * fy), 0.5 * (fx + i * fy)};
}

WeightValues SigmaWeight::v_at(complex z) const {
  if (!v_) throw ParameterError(std::string("weight kind ") + to_string(kind_) +
                                " carries no v function");
  return {v_->evaluate(z), v_z_->evaluate(z), v_zbar_->evaluate(z)};
}

SigmaWeight make_weight(const WeightSpec& spec, const HarmonicMap* context,
                        const WeightOptions& options) {
  SigmaWeight w;
  w.kind_ = spec.kind;
  w.spec_ = spec;
  w.mode_ = options.mode;

  std::optional<cx::Expr> v;
  switch (spec.kind) {
    case WeightKind::becker:
      w.sigma_expr_ = becker_sigma_expr();
      break;
    case WeightKind::ahlfors_c:
      w.c_ = spec.c;
      w.sigma_expr_ = scaled_becker(spec.c + 1.0);
      break;
    case WeightKind::ahlfors_weill:
      v = becker_sigma_expr();
      break;
    case WeightKind::schwarzian_v:
      v = cx::Expr::parse(spec.v);
      break;
    case WeightKind::schwarzian_c:
      w.c_ = spec.c;
      v = scaled_becker(spec.c);
      break;
    case WeightKind::custom:
      w.sigma_expr_ = cx::Expr::parse(spec.sigma);
      break;
  }

  if (v) {
    if (context == nullptr) {
      throw ParameterError(std::string("weight kind ") + to_string(spec.kind) +
                           " needs a map context");
    }
    w.map_dependent_ = true;
    w.v_ = *v;
    w.v_z_ = v->dz();
    w.v_zbar_ = v->dzbar();
    const cx::Expr sigma =
        *v - cx::Expr(0.5) * harmonic_pre_schwarzian_expr(*context);
    w.sigma_expr_ = sigma;
    w.sigma_ = evaluator(sigma);
    if (options.mode == DerivativeMode::symbolic) {
      w.sigma_z_ = evaluator(sigma.dz());
      w.sigma_zbar_ = evaluator(sigma.dzbar());
    } else {
      // sigma = v - P_f/2 evaluated through the closed-form P_f, differentiated
      // numerically as a whole.
      SigmaWeight::Evaluator composite =
          [v = *v, f = *context](complex z) {
            return v.evaluate(z) - 0.5 * harmonic_pre_schwarzian(f, z);
          };
      w.sigma_ = composite;
      w.sigma_z_ = [composite](complex z) {
        return fd_wirtinger(composite, z, interior_fd_step(z)).dz;
      };
      w.sigma_zbar_ = [composite](complex z) {
        return fd_wirtinger(composite, z, interior_fd_step(z)).dzbar;
      };
    }
  } else {
    const cx::Expr& sigma = *w.sigma_expr_;
    w.sigma_ = evaluator(sigma);
    w.sigma_z_ = evaluator(spec.kind == WeightKind::custom && !spec.sigma_z.empty()
                               ? cx::Expr::parse(spec.sigma_z)
                               : sigma.dz());
    w.sigma_zbar_ =
        evaluator(spec.kind == WeightKind::custom && !spec.sigma_zbar.empty()
                      ? cx::Expr::parse(spec.sigma_zbar)
                      : sigma.dzbar());
  }

  if (spec.kind == WeightKind::custom && options.validate) {
    const auto report = check_admissibility(w, options.validation_grid);
    if (!report.derivatives_defined) throw InadmissibleWeight("i", *report.witness_i);
    if (!report.blows_up) throw InadmissibleWeight("ii", *report.witness_ii);
    if (!report.ratio_nonzero) throw InadmissibleWeight("iii", *report.witness_iii);
  }
  return w;
}

SigmaWeight becker_weight() { return make_weight(WeightSpec{}); }

SigmaWeight ahlfors_c_weight(complex c) {
  WeightSpec spec;
  spec.kind = WeightKind::ahlfors_c;
  spec.c = c;
  return make_weight(spec);
}

AdmissibilityReport check_admissibility(const SigmaWeight& w,
                                        const DiskGrid& grid) {
  AdmissibilityReport report;

  auto fail_i = [&](complex z) {
    if (report.derivatives_defined) {
      report.derivatives_defined = false;
      report.witness_i = z;
    }
  };

  // (i) and (iii) on the grid; z = 0 is never a grid point.
  report.min_ratio = std::numeric_limits<double>::infinity();
  for (complex z : grid.points()) {
    WeightValues v;
    try {
      v = w.at(z);
    } catch (const Error&) {
      fail_i(z);
      continue;
    }
    if (!finite(v.value) || !finite(v.dz) || !finite(v.dzbar)) {
      fail_i(z);
      continue;
    }
    if (v.value == complex{}) continue;  // ratio unbounded, not a failure
    const double ratio = std::abs(v.dzbar / (v.value * v.value));
    if (ratio < report.min_ratio) {
      report.min_ratio = ratio;
      if (!(ratio > kRatioFloor)) {
        report.ratio_nonzero = false;
        report.witness_iii = z;
      }
    }
  }

  // (ii) along rays toward the circle.
  report.growth.assign(kGrowthSteps, std::numeric_limits<double>::infinity());
  double weakest_tail = std::numeric_limits<double>::infinity();
  for (int m = 0; m < kRays; ++m) {
    const double theta = 2.0 * std::numbers::pi * m / kRays;
    std::vector<double> samples(kGrowthSteps);
    bool ok = true;
    complex last{};
    for (int j = 1; j <= kGrowthSteps; ++j) {
      last = std::polar(1.0 - std::exp2(-j), theta);
      try {
        samples[j - 1] = std::abs(w.sigma(last));
      } catch (const Error&) {
        fail_i(last);
        samples[j - 1] = 0.0;
        ok = false;
      }
      report.growth[j - 1] = std::min(report.growth[j - 1], samples[j - 1]);
    }
    for (int j = kGrowthSteps - kMonotoneTail; j < kGrowthSteps; ++j) {
      if (!(samples[j] > samples[j - 1])) ok = false;
    }
    if (!(samples.back() >= kBlowUpThreshold)) ok = false;
    if (!ok && samples.back() < weakest_tail) {
      weakest_tail = samples.back();
      report.blows_up = false;
      report.witness_ii = last;
    }
  }
  return report;
}

}  // namespace qcext
