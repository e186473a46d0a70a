#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcext/cxexpr.hpp"
#include "qcext/grid.hpp"
#include "qcext/maps.hpp"

namespace qcext {

enum class WeightKind {
  becker,         // conj(z)/(1-|z|^2)
  ahlfors_c,      // (c+1) conj(z)/(1-|z|^2)
  ahlfors_weill,  // conj(z)/(1-|z|^2) - P/2
  schwarzian_v,   // v - P/2
  schwarzian_c,   // c conj(z)/(1-|z|^2) - P/2
  custom,
};

const char* to_string(WeightKind kind);
WeightKind weight_kind_from_string(const std::string& name);

/// Catalog tag plus parameters, as read from a weight JSON spec.
struct WeightSpec {
  WeightKind kind = WeightKind::becker;
  complex c{};
  std::string v;           // schwarzian_v
  std::string sigma;       // custom
  std::string sigma_z;     // custom, optional
  std::string sigma_zbar;  // custom, optional
};

/// How the Wirtinger derivatives of map-dependent weights are obtained.
enum class DerivativeMode { symbolic, finite_difference };

struct WeightOptions {
  DerivativeMode mode = DerivativeMode::symbolic;
  /// Run check_admissibility on custom weights and throw on failure.
  bool validate = true;
  DiskGrid validation_grid{32, 128};
};

struct WeightValues {
  complex value;
  complex dz;
  complex dzbar;
};

/// An admissible weight sigma with its Wirtinger derivatives. For the
/// Schwarzian-type kinds the auxiliary function v (with sigma = v - P/2) is
/// kept alongside.
class SigmaWeight {
 public:
  using Evaluator = std::function<complex(complex)>;

  WeightKind kind() const { return kind_; }
  complex c() const { return c_; }
  bool map_dependent() const { return map_dependent_; }
  DerivativeMode mode() const { return mode_; }

  complex sigma(complex z) const { return sigma_(z); }
  complex sigma_z(complex z) const { return sigma_z_(z); }
  complex sigma_zbar(complex z) const { return sigma_zbar_(z); }
  WeightValues at(complex z) const {
    return {sigma_(z), sigma_z_(z), sigma_zbar_(z)};
  }

  bool has_v() const { return v_.has_value(); }
  /// v, v_z, v_zbar; throws ParameterError when the kind carries no v.
  WeightValues v_at(complex z) const;

  /// Expression for sigma when one exists (always, except in
  /// finite-difference mode where only the value path is an expression).
  const std::optional<cx::Expr>& sigma_expr() const { return sigma_expr_; }
  const std::optional<cx::Expr>& v_expr() const { return v_; }

  const WeightSpec& spec() const { return spec_; }

 private:
  friend SigmaWeight make_weight(const WeightSpec&, const HarmonicMap*,
                                 const WeightOptions&);

  WeightKind kind_ = WeightKind::becker;
  complex c_{};
  bool map_dependent_ = false;
  DerivativeMode mode_ = DerivativeMode::symbolic;
  WeightSpec spec_;
  Evaluator sigma_, sigma_z_, sigma_zbar_;
  std::optional<cx::Expr> sigma_expr_;
  std::optional<cx::Expr> v_, v_z_, v_zbar_;
};

/// Builds a weight from the catalog. ahlfors_weill and the Schwarzian kinds
/// need a map context supplying P_f (P_phi for analytic maps).
SigmaWeight make_weight(const WeightSpec& spec,
                        const HarmonicMap* context = nullptr,
                        const WeightOptions& options = {});

SigmaWeight becker_weight();
SigmaWeight ahlfors_c_weight(complex c);

/// conj(z)/(1 - z conj(z)).
cx::Expr becker_sigma_expr();

/// Wirtinger derivatives of an arbitrary evaluator by the symmetric
/// four-point stencil with step h.
WeightValues fd_wirtinger(const SigmaWeight::Evaluator& f, complex z, double h);

/// Step used for finite-difference derivatives inside the disk:
/// 1e-6 max(1, |z|), capped at (1 - |z|)/4.
double interior_fd_step(complex z);

struct AdmissibilityReport {
  bool derivatives_defined = true;  // condition (i)
  bool blows_up = true;             // condition (ii)
  bool ratio_nonzero = true;        // condition (iii)
  /// min over 16 rays of |sigma(1 - 2^-j)|, j = 1..20.
  std::vector<double> growth;
  double min_ratio = 0.0;  // min |sigma_zbar / sigma^2| over the grid
  std::optional<complex> witness_i;
  std::optional<complex> witness_ii;
  std::optional<complex> witness_iii;

  bool admissible() const {
    return derivatives_defined && blows_up && ratio_nonzero;
  }
};

AdmissibilityReport check_admissibility(const SigmaWeight& w,
                                        const DiskGrid& grid);

/// A custom weight that fails an admissibility condition.
class InadmissibleWeight : public Error {
 public:
  InadmissibleWeight(const std::string& condition, complex witness)
      : Error("weight fails admissibility condition (" + condition + ") at " +
              format_point(witness)),
        condition_(condition),
        witness_(witness) {}
  const std::string& condition() const { return condition_; }
  complex witness() const { return witness_; }

 private:
  std::string condition_;
  complex witness_;
};

}  // namespace qcext
