#include "qcext/criteria.hpp"

#include <cmath>

namespace qcext {

namespace {

constexpr double kOmegaFloor = 1e-12;

constexpr CriterionKind kAllKinds[] = {
    CriterionKind::becker,          CriterionKind::nehari,
    CriterionKind::ahlfors_sigma,   CriterionKind::ahlfors_c,
    CriterionKind::ahlfors_schwarzian_v, CriterionKind::ahlfors_schwarzian_c,
    CriterionKind::hm_harmonic,     CriterionKind::bravo_c,
    CriterionKind::main_harmonic_sigma, CriterionKind::corollary_v,
    CriterionKind::corollary_c,     CriterionKind::teichmuller,
};

bool needs_schwarzian(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::nehari:
    case CriterionKind::ahlfors_schwarzian_v:
    case CriterionKind::ahlfors_schwarzian_c:
    case CriterionKind::corollary_v:
    case CriterionKind::corollary_c:
      return true;
    default:
      return false;
  }
}

}  // namespace

const char* to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::becker: return "becker";
    case CriterionKind::nehari: return "nehari";
    case CriterionKind::ahlfors_sigma: return "ahlfors_sigma";
    case CriterionKind::ahlfors_c: return "ahlfors_c";
    case CriterionKind::ahlfors_schwarzian_v: return "ahlfors_schwarzian_v";
    case CriterionKind::ahlfors_schwarzian_c: return "ahlfors_schwarzian_c";
    case CriterionKind::hm_harmonic: return "hm_harmonic";
    case CriterionKind::bravo_c: return "bravo_c";
    case CriterionKind::main_harmonic_sigma: return "main_harmonic_sigma";
    case CriterionKind::corollary_v: return "corollary_v";
    case CriterionKind::corollary_c: return "corollary_c";
    case CriterionKind::teichmuller: return "teichmuller";
  }
  return "unknown";
}

CriterionKind criterion_kind_from_string(const std::string& name) {
  for (auto k : kAllKinds) {
    if (name == to_string(k)) return k;
  }
  throw ParameterError("unknown criterion '" + name + "'");
}

bool is_analytic_criterion(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::becker:
    case CriterionKind::nehari:
    case CriterionKind::ahlfors_sigma:
    case CriterionKind::ahlfors_c:
    case CriterionKind::ahlfors_schwarzian_v:
    case CriterionKind::ahlfors_schwarzian_c:
    case CriterionKind::teichmuller:
      return true;
    default:
      return false;
  }
}

bool needs_weight(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::ahlfors_sigma:
    case CriterionKind::ahlfors_schwarzian_v:
    case CriterionKind::main_harmonic_sigma:
    case CriterionKind::corollary_v:
    case CriterionKind::teichmuller:
      return true;
    default:
      return false;
  }
}

bool needs_v(CriterionKind kind) {
  return kind == CriterionKind::ahlfors_schwarzian_v ||
         kind == CriterionKind::corollary_v;
}

bool uses_c(CriterionKind kind) {
  return kind == CriterionKind::ahlfors_c ||
         kind == CriterionKind::ahlfors_schwarzian_c ||
         kind == CriterionKind::bravo_c || kind == CriterionKind::corollary_c;
}

Criterion make_criterion(CriterionKind kind, const HarmonicMap& f,
                         std::optional<SigmaWeight> weight, complex c) {
  if (needs_weight(kind) && !weight) {
    throw ParameterError(std::string("criterion ") + to_string(kind) +
                         " needs a weight");
  }
  if (needs_v(kind) && !weight->has_v()) {
    throw ParameterError(std::string("criterion ") + to_string(kind) +
                         " needs a weight carrying v (schwarzian_v, "
                         "schwarzian_c or ahlfors_weill)");
  }
  if (!is_analytic_criterion(kind)) check_sense_preserving(f, DiskGrid{32, 128});
  if (!needs_weight(kind)) weight.reset();
  return Criterion(kind, f, std::move(weight), c);
}

std::optional<CriterionTerms> Criterion::evaluate(complex z) const {
  if (needs_weight(kind_) && z == complex{}) return std::nullopt;

  const double w = 1.0 - std::norm(z);
  const MapJet j = map_.jet(z, needs_schwarzian(kind_) ? 3 : 2);

  CriterionTerms t;
  if (is_analytic_criterion(kind_)) {
    const complex p = pre_schwarzian_value(j.h, z);
    switch (kind_) {
      case CriterionKind::becker:
        t.lhs = w * std::abs(p);
        break;
      case CriterionKind::nehari:
        t.lhs = w * w * std::abs(schwarzian_value(j.h, z));
        t.rhs = 2.0;
        break;
      case CriterionKind::ahlfors_sigma:
      case CriterionKind::teichmuller: {
        const WeightValues s = weight_->at(z);
        t.lhs = std::abs(s.value * p + s.value * s.value - s.dz);
        t.rhs = std::abs(s.dzbar);
        break;
      }
      case CriterionKind::ahlfors_c:
        t.lhs = std::abs(c_ * std::norm(z) + w * z * p);
        break;
      case CriterionKind::ahlfors_schwarzian_v: {
        const WeightValues v = weight_->v_at(z);
        t.lhs = std::abs(0.5 * schwarzian_value(j.h, z) + v.value * v.value - v.dz);
        t.rhs = std::abs(v.dzbar);
        break;
      }
      case CriterionKind::ahlfors_schwarzian_c:
        t.lhs = std::abs(0.5 * schwarzian_value(j.h, z) * w * w -
                         c_ * (1.0 - c_) * std::conj(z));
        t.rhs = std::abs(c_);
        break;
      default:
        break;
    }
  } else {
    const DilatationJet d = map_.is_analytic() ? DilatationJet{} : dilatation_jet(j, z);
    const double den = 1.0 - std::norm(d.omega);
    if (den < kOmegaFloor) return std::nullopt;
    const complex pf = harmonic_pre_schwarzian(j, z);
    const double dil = std::abs(d.d1) / den;  // |omega'|/(1-|omega|^2)
    switch (kind_) {
      case CriterionKind::hm_harmonic:
        t.lhs = w * std::abs(pf) + w * dil;
        break;
      case CriterionKind::bravo_c:
        t.lhs = std::abs(c_ * std::norm(z) + w * z * pf) + std::abs(z) * w * dil;
        break;
      case CriterionKind::main_harmonic_sigma: {
        const WeightValues s = weight_->at(z);
        t.lhs = std::abs(s.value * pf + s.value * s.value - s.dz) +
                std::abs(s.value) * dil;
        t.rhs = std::abs(s.dzbar);
        break;
      }
      case CriterionKind::corollary_v: {
        const WeightValues v = weight_->v_at(z);
        const complex sf = harmonic_schwarzian(j, z);
        t.lhs = std::abs(0.5 * sf + v.value * v.value - v.dz) +
                std::abs((v.value - pf) * d.d1 / den);
        t.rhs = std::abs(v.dzbar - std::conj(pf));
        break;
      }
      case CriterionKind::corollary_c: {
        const complex sf = harmonic_schwarzian(j, z);
        t.lhs = std::abs(0.5 * sf * w * w - c_ * (1.0 - c_) * std::conj(z)) +
                std::abs((c_ * std::conj(z) * w - 0.5 * pf * w * w) * d.d1 / den);
        t.rhs = std::abs(c_ - std::conj(pf) * w * w);
        break;
      }
      default:
        break;
    }
  }

  if (!(t.rhs > 0.0)) {
    throw PointError(PointError::Kind::degenerate_normalizer, z,
                     std::string("right-hand side of ") + to_string(kind_) +
                         " vanishes");
  }
  if (!std::isfinite(t.lhs) || !std::isfinite(t.rhs)) {
    throw PointError(PointError::Kind::evaluation, z,
                     std::string(to_string(kind_)) + " is not finite");
  }
  return t;
}

double Criterion::ratio(complex z) const {
  const auto t = evaluate(z);
  if (!t) {
    throw PointError(PointError::Kind::evaluation, z,
                     std::string(to_string(kind_)) + " excludes this point");
  }
  return t->ratio();
}

GridSup grid_sup(const Criterion& cr, const std::vector<complex>& points) {
  const std::size_t n = points.size();
  const std::size_t blocks = block_count(n);
  std::vector<GridSup> partial(blocks);
  parallel_blocks(n, [&](std::size_t block, std::size_t begin, std::size_t end) {
    GridSup local;
    for (std::size_t i = begin; i < end; ++i) {
      const auto t = cr.evaluate(points[i]);
      if (!t) {
        if (local.excluded++ == 0) local.first_excluded = points[i];
        continue;
      }
      local.best.offer(t->ratio(), i);
    }
    partial[block] = local;
  });
  GridSup out;
  for (const auto& p : partial) {
    if (!p.best.empty()) out.best.merge(p.best);
    if (p.excluded != 0 && !out.first_excluded) out.first_excluded = p.first_excluded;
    out.excluded += p.excluded;
  }
  return out;
}

CriterionReport sup_ratio(const Criterion& cr, const DiskGrid& grid,
                          double target_k, const SupOptions& options) {
  CriterionReport report;
  report.criterion = cr.name();
  if (uses_c(cr.kind())) report.c = cr.c();
  if (cr.weight()) report.weight = cr.weight()->spec();
  report.target_k = target_k;

  DiskGrid current = grid;
  current.include_center = cr.includes_center();
  current.validate();

  double previous = 0.0;
  for (;;) {
    const auto points = current.points();
    const GridSup sup = grid_sup(cr, points);
    if (sup.best.empty()) {
      throw PointError(PointError::Kind::evaluation,
                       sup.first_excluded.value_or(complex{}),
                       "every grid point is excluded");
    }
    report.k_hat = sup.best.value;
    report.witness = points[sup.best.index];
    report.grid = current;
    report.excluded = sup.excluded;
    report.first_excluded = sup.first_excluded;
    report.refinement.push_back(
        {current.n_radial, current.n_angular, points.size(), report.k_hat});

    if (!options.refine) break;
    if (report.refinement.size() > 1) {
      const double change = std::abs(report.k_hat - previous);
      if (change <= options.absolute_tolerance ||
          change < options.relative_tolerance * std::abs(report.k_hat)) {
        break;
      }
    }
    const DiskGrid next = current.refined();
    if (next.n_radial > options.max_radial || next.n_angular > options.max_angular) {
      break;
    }
    previous = report.k_hat;
    current = next;
  }

  if (!is_analytic_criterion(cr.kind()) && !cr.map().is_analytic()) {
    report.omega_sup = omega_sup(cr.map(), report.grid);
  }
  report.pass = passes(report.k_hat, target_k);
  return report;
}

bool k_condition_check(double k_hat, double omega_sup) {
  return k_hat < (1.0 - omega_sup) / (1.0 + omega_sup);
}

}  // namespace qcext
