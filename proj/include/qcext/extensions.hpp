#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcext/criteria.hpp"
#include "qcext/grid.hpp"
#include "qcext/maps.hpp"
#include "qcext/weights.hpp"

namespace qcext {

enum class Construction {
  ahlfors,          // phi(1/conj z) + phi'/sigma at 1/conj z
  ahlfors_weill,    // E_phi(1/conj z)
  harmonic_lambda,  // f_lambda(1/conj z) + U_lambda(1/conj z)
  teichmuller,      // f(1/conj z) + U_alpha(1/conj z)
};

const char* to_string(Construction c);
Construction construction_from_string(const std::string& name);

/// The criterion whose margin decides whether a construction is certified.
CriterionKind governing_criterion(Construction c);

struct ExtensionOptions {
  double r_max = 16.0;
  /// Run the governing criterion; without it the build is never certified.
  bool check = true;
  DiskGrid grid{};
  SupOptions sup{};
};

/// An explicit extension of a map of the disk to the plane.
///
/// Inside the disk it is f_lambda (or phi); outside it is the reflected
/// formula evaluated at xi = 1/conj(z). The unit circle itself is not
/// evaluated (see boundary_trace) and neither is |z| > r_max.
class PlaneExtension {
 public:
  Construction construction() const { return construction_; }
  std::string tag() const { return to_string(construction_); }
  const HarmonicMap& map() const { return map_; }
  const SigmaWeight& weight() const { return weight_; }
  /// lambda for harmonic_lambda, alpha for teichmuller, 0 otherwise.
  complex parameter() const { return parameter_; }
  double r_max() const { return r_max_; }

  bool certified() const { return certified_; }
  const std::optional<CriterionReport>& report() const { return report_; }
  /// k_hat of the governing criterion, when it was run.
  std::optional<double> k_hat() const;
  /// ||omega|| estimate (0 for analytic constructions).
  double omega_sup() const { return omega_sup_; }

  /// Interior formula at a point of the disk.
  complex interior(complex z) const;
  /// u, U_lambda or U_alpha at a point of the punctured disk.
  complex u_term(complex xi) const;
  /// interior(1/conj z) + u_term(1/conj z) for |z| > 1.
  complex exterior(complex z) const;
  /// Region dispatch with domain checks.
  complex evaluate(complex z) const;

 private:
  friend PlaneExtension build_extension(Construction, const HarmonicMap&,
                                        std::optional<SigmaWeight>, complex,
                                        const ExtensionOptions&);
  PlaneExtension(Construction c, HarmonicMap map, SigmaWeight weight)
      : construction_(c), map_(std::move(map)), weight_(std::move(weight)) {}

  Construction construction_;
  HarmonicMap map_;
  SigmaWeight weight_;
  complex parameter_{};
  double r_max_ = 16.0;
  bool certified_ = false;
  std::optional<CriterionReport> report_;
  double omega_sup_ = 0.0;
};

/// Builds an extension. ahlfors and ahlfors_weill need an analytic map;
/// teichmuller uses the analytic part of f with the given alpha. When no
/// weight is given the Becker weight is used (the Ahlfors-Weill weight for
/// ahlfors_weill). Builds whose criterion fails are kept but not certified.
PlaneExtension build_extension(Construction c, const HarmonicMap& f,
                               std::optional<SigmaWeight> weight = std::nullopt,
                               complex parameter = 0.0,
                               const ExtensionOptions& options = {});

struct BoundaryTrace {
  std::vector<double> theta;
  std::vector<complex> inner;  // F((1 - eps) e^{i theta})
  std::vector<complex> outer;  // F((1 + eps) e^{i theta})
  std::vector<double> gap;
  double max_gap = 0.0;
  double epsilon = 0.0;
};

BoundaryTrace boundary_trace(const PlaneExtension& e, std::size_t n, double epsilon);

/// Smallest distance between two samples of a closed polyline.
double min_pairwise_distance(const std::vector<complex>& samples);

/// No two samples of either trace polyline lie within tol of each other.
bool trace_injective(const BoundaryTrace& trace, double tol = 1e-9);

struct ExtensionSample {
  complex z;
  complex value;
  bool exterior;
};

/// Samples the extension on a disk grid and an exterior annulus grid,
/// interior points first.
std::vector<ExtensionSample> sample_extension(const PlaneExtension& e,
                                              const DiskGrid& interior,
                                              const AnnulusGrid& exterior);

}  // namespace qcext
