#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcext/extensions.hpp"
#include "qcext/grid.hpp"

namespace qcext {

/// Finite-difference step for mu: 1e-6 max(1, |z|), capped at ||z| - 1|/4.
double mu_fd_step(complex z);

/// mu = F_zbar / F_z of the extension by the symmetric four-point stencil.
/// Throws PointError(degenerate_derivative) when |F_z| < 1e-12.
complex mu_fd(const PlaneExtension& e, complex z);

/// Closed-form Beltrami coefficient of the extension at an exterior point w,
/// from the derivatives of G = f_lambda + U at z = 1/conj(w):
/// mu(w) = (G_z / G_zbar) (w / conj w)^2.
complex mu_exterior(const PlaneExtension& e, complex w);

/// |mu(w)| from the closed forms: |G_z / G_zbar| for the Ahlfors-type and
/// harmonic constructions, |(alpha + eta)/(1 + conj(alpha) eta)| for the
/// Teichmueller construction. Throws PointError(degenerate_derivative) when
/// the denominator falls below 1e-14.
double mu_analytic_exterior(const PlaneExtension& e, complex w);

/// eta(z) = -(sigma^2 + sigma P_h - sigma_z) /
///          (conj(sigma_zbar) (sigma/conj sigma)^2 conj(h')/h').
complex teichmuller_eta(const PlaneExtension& e, complex z);

/// omega*(z) = (sigma / sigma_zbar) omega' / (1 - |omega|^2).
complex omega_star(const HarmonicMap& f, const SigmaWeight& w, complex z);

/// rho(x) = (k + |lambda| w - (1 - w) x) / (1 - k |lambda| w - (1 - w) x).
/// Throws ParameterError when the denominator is not positive.
double rho_bound(double k, double lambda_abs, double omega_sup, double x);

enum class KFormula { analytic, harmonic, teichmuller };

const char* to_string(KFormula f);

struct KParams {
  double k = 0.0;
  double lambda_abs = 1.0;  // harmonic
  double omega_sup = 0.0;   // harmonic
  double alpha_abs = 0.0;   // teichmuller
};

struct KValue {
  double K;
  double ratio;  // (K - 1)/(K + 1)
};

/// analytic: (1+k)/(1-k); harmonic: (1+k+|l|w(1-k))/(1-k-|l|w(1+k));
/// teichmuller: (1+k)(1+|a|)/((1-k)(1-|a|)). Throws ParameterError when a
/// parameter is out of range or the denominator is not positive.
KValue k_formula(KFormula formula, const KParams& params);

/// The K-formula matching a construction, or nullopt when its hypotheses
/// fail (harmonic family with k >= (1-||omega||)/(1+||omega||)).
std::optional<KValue> extension_bound(const PlaneExtension& e, double k);

struct MuWitness {
  std::string region;
  complex z;
  complex mu;
};

struct MuSample {
  complex z;
  complex mu;
  bool exterior;
};

struct DilatationGrids {
  AnnulusGrid interior{1e-3, 1.0 - 1e-3, 32, 128, false};
  AnnulusGrid exterior{1.0 + 1e-3, 8.0, 32, 128, true};
};

/// Certification tolerance on sup |mu| against (K - 1)/(K + 1).
inline constexpr double kMuTolerance = 1e-6;

struct DilatationReport {
  double sup_mu_interior = 0.0;
  double sup_mu_exterior = 0.0;
  double sup_mu_exterior_analytic = 0.0;
  /// max over exterior samples of ||mu_fd| - |mu_analytic||.
  double oracle_gap = 0.0;
  std::optional<double> k;
  std::optional<KValue> bound;
  bool quasiconformal = true;  // no sample with |mu| >= 1
  bool certified = false;
  std::vector<MuWitness> witnesses;
  std::vector<MuSample> samples;
};

/// Measures |mu| on both regions and compares the global sup with the bound
/// for the construction, using k = k_hat of the governing criterion.
DilatationReport max_dilatation(const PlaneExtension& e,
                                const DilatationGrids& grids = {});

}  // namespace qcext
