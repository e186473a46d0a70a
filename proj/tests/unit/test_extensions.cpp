#include "doctest.h"

#include "qcext/extensions.hpp"
#include "support/oracles.hpp"

using namespace qcext;
using cx::Expr;

namespace {

HarmonicMap pipeline_map() {
  return HarmonicMap::hg(Expr::parse("z + 0.15*z^2"), Expr::parse("0.1*z^2"));
}

const HarmonicMap kIdentity = HarmonicMap::analytic(Expr::parse("z"));

std::vector<complex> exterior_points() { return oracle::polar_points(1.01, 4.0, 16, 48); }

}  // namespace

TEST_CASE("construction names") {
  for (auto c : {Construction::ahlfors, Construction::ahlfors_weill, Construction::harmonic_lambda,
                 Construction::teichmuller}) {
    CHECK(construction_from_string(to_string(c)) == c);
  }
  CHECK_THROWS_AS(construction_from_string("x"), ParameterError);
  CHECK(governing_criterion(Construction::harmonic_lambda) == CriterionKind::main_harmonic_sigma);
}

TEST_CASE("identity: every construction is the identity outside the disk") {
  for (auto c : {Construction::ahlfors, Construction::ahlfors_weill, Construction::harmonic_lambda,
                 Construction::teichmuller}) {
    const PlaneExtension e = build_extension(c, kIdentity);
    CAPTURE(e.tag());
    CHECK(e.certified());
    CHECK(std::abs(e.evaluate(complex(2.0, 1.0)) - complex(2.0, 1.0)) < 1e-12);
    for (complex z : exterior_points()) CHECK(std::abs(e.evaluate(z) - z) < 1e-12);
  }
}

TEST_CASE("affine Teichmueller extension is z + alpha conj(z)") {
  for (complex alpha : {complex(0.3), complex(0.1), complex(0.6, 0.2)}) {
    const PlaneExtension e = build_extension(Construction::teichmuller, kIdentity, std::nullopt, alpha);
    CHECK(e.certified());
    CHECK(e.omega_sup() == doctest::Approx(std::abs(alpha)));
    for (complex z : exterior_points()) CHECK(std::abs(e.evaluate(z) - (z + alpha * std::conj(z))) < 1e-12);
    for (complex z : oracle::polar_points(0.1, 0.99, 8, 16)) {
      CHECK(std::abs(e.evaluate(z) - (z + alpha * std::conj(z))) < 1e-15);
    }
  }
  const PlaneExtension e = build_extension(Construction::teichmuller, kIdentity, std::nullopt, 0.3);
  CHECK(std::abs(e.evaluate(complex(0.0, 3.0)) - complex(0.0, 2.1)) < 1e-12);
}

TEST_CASE("reflection formula against an independent evaluation") {
  const HarmonicMap f = pipeline_map();
  for (complex lambda : {complex(0.0), complex(0.5), complex(1.0), complex(0.0, -0.7)}) {
    const PlaneExtension e = build_extension(Construction::harmonic_lambda, f, std::nullopt, lambda);
    CHECK(e.certified());
    for (complex z : exterior_points()) {
      const complex xi = 1.0 / std::conj(z);
      const double t = 1.0 - std::norm(xi);
      const complex h = xi + 0.15 * xi * xi, g = 0.1 * xi * xi;
      const complex h1 = 1.0 + 0.3 * xi, g1 = 0.2 * xi;
      const complex want = h + lambda * std::conj(g) + h1 * t / std::conj(xi) + lambda * std::conj(g1) * t / xi;
      CHECK(oracle::rel_err(e.evaluate(z), want) < 1e-12);
    }
    for (complex z : oracle::polar_points(0.1, 0.95, 4, 16)) {
      CHECK(e.evaluate(z) == f.with_lambda(lambda).value(z));
    }
  }
}

TEST_CASE("collapses: lambda = 0 and alpha = 0 reproduce the analytic construction") {
  const HarmonicMap f = pipeline_map();
  const PlaneExtension a = build_extension(Construction::ahlfors, HarmonicMap::analytic(f.h()));
  const PlaneExtension l0 = build_extension(Construction::harmonic_lambda, f, std::nullopt, 0.0);
  const PlaneExtension t0 = build_extension(Construction::teichmuller, f, std::nullopt, 0.0);
  for (complex z : exterior_points()) {
    CHECK(l0.evaluate(z) == a.evaluate(z));
    CHECK(t0.evaluate(z) == a.evaluate(z));
  }
}

TEST_CASE("Ahlfors-Weill literal formula equals the sigma form with the matching weight") {
  const HarmonicMap phi = HarmonicMap::analytic(Expr::parse("z + 0.2*z^2"));
  const PlaneExtension aw = build_extension(Construction::ahlfors_weill, phi);
  WeightSpec s;
  s.kind = WeightKind::ahlfors_weill;
  const PlaneExtension ah = build_extension(Construction::ahlfors, phi, make_weight(s, &phi));
  for (complex z : exterior_points()) CHECK(oracle::rel_err(aw.evaluate(z), ah.evaluate(z)) < 1e-12);
}

TEST_CASE("domain checks") {
  const PlaneExtension e = build_extension(Construction::ahlfors, kIdentity);
  try {
    e.evaluate(complex(0.0, 1.0));
    FAIL("expected a boundary point");
  } catch (const PointError& err) {
    CHECK(err.kind() == PointError::Kind::boundary_point);
  }
  try {
    e.evaluate(17.0);
    FAIL("expected out of range");
  } catch (const PointError& err) {
    CHECK(err.kind() == PointError::Kind::out_of_range);
  }
  CHECK_THROWS_AS(build_extension(Construction::ahlfors, pipeline_map()), ParameterError);
  CHECK_THROWS_AS(build_extension(Construction::ahlfors_weill, pipeline_map()), ParameterError);
  CHECK_THROWS_AS(build_extension(Construction::harmonic_lambda, pipeline_map(), std::nullopt, 2.0),
                  ParameterError);
}

TEST_CASE("failing criteria leave the build uncertified") {
  const HarmonicMap phi = HarmonicMap::analytic(Expr::parse("z + 0.49*z^2"));
  const PlaneExtension e = build_extension(Construction::ahlfors, phi);
  REQUIRE(e.k_hat());
  CHECK(*e.k_hat() > 1.0);
  CHECK_FALSE(e.certified());
  ExtensionOptions o;
  o.check = false;
  const PlaneExtension unchecked = build_extension(Construction::ahlfors, kIdentity, std::nullopt, 0.0, o);
  CHECK_FALSE(unchecked.certified());
  CHECK_FALSE(unchecked.k_hat());
}

TEST_CASE("boundary trace: identity circles and the affine ellipse") {
  const PlaneExtension id = build_extension(Construction::ahlfors, kIdentity);
  const BoundaryTrace t = boundary_trace(id, 256, 1e-3);
  for (std::size_t k = 0; k < t.theta.size(); ++k) {
    CHECK(std::abs(std::abs(t.inner[k]) - (1.0 - 1e-3)) < 1e-12);
    CHECK(std::abs(std::abs(t.outer[k]) - (1.0 + 1e-3)) < 1e-12);
  }
  CHECK(t.max_gap <= 2e-3 + 1e-12);
  CHECK(trace_injective(t));

  const PlaneExtension af = build_extension(Construction::teichmuller, kIdentity, std::nullopt, 0.3);
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {1e-2, 5e-3, 2.5e-3}) {
    const BoundaryTrace ta = boundary_trace(af, 512, eps);
    for (std::size_t k = 0; k < ta.theta.size(); ++k) {
      const complex u = std::polar(1.0, ta.theta[k]);
      const complex ellipse = u + 0.3 * std::conj(u);
      CHECK(std::abs(ta.inner[k] - (1.0 - eps) * ellipse) < 1e-12);
      CHECK(std::abs(ta.outer[k] - (1.0 + eps) * ellipse) < 1e-12);
    }
    CHECK(ta.max_gap <= 2.0 * 1.3 * eps + 1e-12);
    CHECK(ta.max_gap < prev);
    prev = ta.max_gap;
  }
  CHECK_THROWS_AS(boundary_trace(id, 8, 1e-3), ParameterError);
  CHECK_THROWS_AS(boundary_trace(id, 64, 0.1), ParameterError);
}

TEST_CASE("boundary trace of the pipeline map shrinks and stays injective") {
  const PlaneExtension e = build_extension(Construction::harmonic_lambda, pipeline_map(), std::nullopt, 1.0);
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {1e-2, 5e-3, 2.5e-3}) {
    const BoundaryTrace t = boundary_trace(e, 1024, eps);
    CHECK(t.max_gap < prev);
    CHECK(trace_injective(t));
    prev = t.max_gap;
  }
}

TEST_CASE("sampling covers both regions") {
  const PlaneExtension e = build_extension(Construction::ahlfors, kIdentity);
  const auto s = sample_extension(e, DiskGrid{8, 16}, AnnulusGrid{1.1, 3.0, 4, 16, true});
  const DiskGrid d{8, 16};
  REQUIRE(s.size() == d.size() + 64);
  CHECK_FALSE(s.front().exterior);
  CHECK(s.back().exterior);
  for (const auto& p : s) CHECK(std::abs(p.value - p.z) < 1e-12);
}
