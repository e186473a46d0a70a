#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcext/grid.hpp"
#include "qcext/maps.hpp"
#include "qcext/weights.hpp"

namespace qcext {

enum class CriterionKind {
  becker,                // (1-|z|^2)|P| <= k
  nehari,                // (1-|z|^2)^2 |S| <= 2
  ahlfors_sigma,         // |sigma P + sigma^2 - sigma_z| <= k |sigma_zbar|
  ahlfors_c,             // |c|z|^2 + (1-|z|^2) z P| <= k
  ahlfors_schwarzian_v,  // |S/2 + v^2 - v_z| <= k |v_zbar|
  ahlfors_schwarzian_c,  // |S/2 (1-|z|^2)^2 - c(1-c) conj(z)| <= k |c|
  hm_harmonic,           // (1-|z|^2)|P_f| + |omega'|(1-|z|^2)/(1-|omega|^2) <= k
  bravo_c,               // |c|z|^2 + (1-|z|^2) z P_f| + |z omega'|(1-|z|^2)/(1-|omega|^2) <= k
  main_harmonic_sigma,   // |sigma P_f + sigma^2 - sigma_z| + |sigma omega'|/(1-|omega|^2) <= k |sigma_zbar|
  corollary_v,
  corollary_c,
  teichmuller,           // |sigma P_h + sigma^2 - sigma_z| <= k |sigma_zbar|
};

const char* to_string(CriterionKind kind);
CriterionKind criterion_kind_from_string(const std::string& name);

/// Criteria read from the analytic part h only.
bool is_analytic_criterion(CriterionKind kind);
/// Criteria that need a sigma weight (or a weight carrying v).
bool needs_weight(CriterionKind kind);
bool needs_v(CriterionKind kind);
bool uses_c(CriterionKind kind);

struct CriterionTerms {
  double lhs = 0.0;
  double rhs = 1.0;
  double ratio() const { return lhs / rhs; }
};

/// One inequality lhs(z) <= k rhs(z) wired to a map, an optional weight and
/// the constant c.
///
/// Analytic criteria use phi = h. Harmonic criteria use f = h + conj(g); the
/// family parameter lambda of the map is not applied here.
class Criterion {
 public:
  CriterionKind kind() const { return kind_; }
  std::string name() const { return to_string(kind_); }
  const HarmonicMap& map() const { return map_; }
  const std::optional<SigmaWeight>& weight() const { return weight_; }
  complex c() const { return c_; }

  /// z = 0 is a singular point of the weighted criteria and is skipped there.
  bool includes_center() const { return !needs_weight(kind_); }

  /// lhs and rhs at z, or nullopt when z is excluded: z = 0 for weighted
  /// criteria, or 1 - |omega(z)|^2 < 1e-12 for harmonic criteria.
  /// Throws PointError(degenerate_normalizer) when rhs vanishes.
  std::optional<CriterionTerms> evaluate(complex z) const;

  /// evaluate(z)->ratio(); throws PointError(evaluation) at excluded points.
  double ratio(complex z) const;

 private:
  friend Criterion make_criterion(CriterionKind, const HarmonicMap&,
                                  std::optional<SigmaWeight>, complex);
  Criterion(CriterionKind kind, HarmonicMap map,
            std::optional<SigmaWeight> weight, complex c)
      : kind_(kind), map_(std::move(map)), weight_(std::move(weight)), c_(c) {}

  CriterionKind kind_;
  HarmonicMap map_;
  std::optional<SigmaWeight> weight_;
  complex c_;
};

/// Throws ParameterError when a required weight is missing (or carries no v)
/// and PointError(orientation) when a harmonic criterion is applied to a map
/// that is not sense-preserving on a coarse check grid.
Criterion make_criterion(CriterionKind kind, const HarmonicMap& f,
                         std::optional<SigmaWeight> weight = std::nullopt,
                         complex c = 0.0);

struct SupOptions {
  bool refine = true;
  double relative_tolerance = 1e-4;
  /// Changes below this count as converged (values at round-off level).
  double absolute_tolerance = 1e-12;
  std::size_t max_radial = 1024;
  std::size_t max_angular = 4096;
};

struct RefinementStep {
  std::size_t n_radial;
  std::size_t n_angular;
  std::size_t points;
  double k_hat;
};

struct CriterionReport {
  std::string criterion;
  complex c{};
  std::optional<WeightSpec> weight;
  double k_hat = 0.0;
  complex witness{};
  DiskGrid grid;
  std::vector<RefinementStep> refinement;
  std::optional<double> omega_sup;
  std::size_t excluded = 0;
  std::optional<complex> first_excluded;
  double target_k = 0.0;
  bool pass = false;
};

/// Guard band for the strict comparison k_hat < k.
inline constexpr double kPassGuard = 1e-9;

inline bool passes(double k_hat, double target_k) {
  return k_hat < target_k - kPassGuard;
}

struct GridSup {
  ArgMax best;
  std::size_t excluded = 0;
  std::optional<complex> first_excluded;
};

/// sup of the ratio field over the given points.
GridSup grid_sup(const Criterion& cr, const std::vector<complex>& points);

/// Estimates sup lhs/rhs over the disk, doubling the grid until the relative
/// change drops below the tolerance or the size cap is hit.
CriterionReport sup_ratio(const Criterion& cr, const DiskGrid& grid,
                          double target_k, const SupOptions& options = {});

/// k < (1 - ||omega||)/(1 + ||omega||).
bool k_condition_check(double k_hat, double omega_sup);

}  // namespace qcext
