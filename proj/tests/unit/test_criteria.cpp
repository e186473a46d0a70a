#include "doctest.h"

#include "qcext/criteria.hpp"
#include "support/oracles.hpp"

using namespace qcext;
using cx::Expr;

namespace {

HarmonicMap pipeline_map() {
  return HarmonicMap::hg(Expr::parse("z + 0.15*z^2"), Expr::parse("0.1*z^2"));
}

SigmaWeight aw_weight(const HarmonicMap& f) {
  WeightSpec s;
  s.kind = WeightKind::ahlfors_weill;
  return make_weight(s, &f);
}

const std::vector<complex> kGrid = DiskGrid{32, 128}.points();

}  // namespace

TEST_CASE("names round-trip") {
  for (int k = 0; k <= static_cast<int>(CriterionKind::teichmuller); ++k) {
    const auto kind = static_cast<CriterionKind>(k);
    CHECK(criterion_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(criterion_kind_from_string("bogus"), ParameterError);
}

TEST_CASE("identity map: every analytic criterion vanishes") {
  const HarmonicMap id = HarmonicMap::analytic(Expr::parse("z"));
  const auto b = sup_ratio(make_criterion(CriterionKind::becker, id), DiskGrid{32, 128}, 0.5);
  CHECK(b.k_hat == 0.0);
  CHECK(b.pass);
  const auto n = sup_ratio(make_criterion(CriterionKind::nehari, id), DiskGrid{32, 128}, 0.5);
  CHECK(n.k_hat == 0.0);
  const auto s = sup_ratio(make_criterion(CriterionKind::ahlfors_sigma, id, becker_weight()),
                           DiskGrid{32, 128}, 0.5);
  CHECK(s.k_hat < 1e-12);
}

TEST_CASE("becker on z + eps z^2/2: refinement against a dense sweep") {
  const double eps = 0.2;
  const HarmonicMap f = HarmonicMap::analytic(Expr::parse("z + 0.1*z^2"));
  const auto report = sup_ratio(make_criterion(CriterionKind::becker, f), DiskGrid{}, 1.0);
  const double dense = oracle::dense_polar_sup(
      [&](complex z) { return (1.0 - std::norm(z)) * std::abs(eps / (1.0 + eps * z)); }, 2048, 8192);
  CHECK(std::abs(report.k_hat - dense) < 1e-4);
  CHECK(std::abs(report.k_hat - oracle::becker_quadratic_sup(eps)) < 1e-4);
  CHECK(report.k_hat <= oracle::becker_quadratic_sup(eps) + 1e-15);
  CHECK(report.pass);
  CHECK(std::abs(report.witness.imag()) < 1e-12);
  CHECK(report.witness.real() < 0.0);
  for (std::size_t i = 1; i < report.refinement.size(); ++i) {
    CHECK(report.refinement[i].k_hat >= report.refinement[i - 1].k_hat);
    CHECK(report.refinement[i].points > report.refinement[i - 1].points);
  }
}

TEST_CASE("main criterion on z + alpha conj(z) has zero margin") {
  const HarmonicMap f = HarmonicMap::hg(Expr::parse("z"), Expr::parse("(0.3-0.2i)*z"));
  const auto r = sup_ratio(make_criterion(CriterionKind::main_harmonic_sigma, f, becker_weight()),
                           DiskGrid{32, 128}, 0.01);
  CHECK(r.k_hat < 1e-12);
  CHECK(r.pass);
  REQUIRE(r.omega_sup);
  CHECK(*r.omega_sup == doctest::Approx(std::abs(complex(0.3, 0.2))));
}

TEST_CASE("becker weight reduces the main criterion to bravo_c with c = 0") {
  const HarmonicMap f = pipeline_map();
  const Criterion main = make_criterion(CriterionKind::main_harmonic_sigma, f, becker_weight());
  const Criterion bravo = make_criterion(CriterionKind::bravo_c, f, std::nullopt, 0.0);
  for (complex z : kGrid) {
    const double t = 1.0 - std::norm(z);
    const auto w = dilatation_at(f, z);
    const double closed = std::abs(z) * t *
                          (std::abs(harmonic_pre_schwarzian(f, z)) + std::abs(w.d1) / (1.0 - std::norm(w.omega)));
    CHECK(std::abs(main.ratio(z) - bravo.ratio(z)) < 1e-12);
    CHECK(std::abs(main.ratio(z) - closed) < 1e-12);
  }
}

TEST_CASE("ahlfors c-weight: criterion equals the c|z|^2 + (1-|z|^2) z P form") {
  const HarmonicMap f = HarmonicMap::analytic(Expr::parse("z + 0.2*z^2 - 0.1*z^3"));
  const Criterion becker = make_criterion(CriterionKind::becker, f);
  const Criterion a0 = make_criterion(CriterionKind::ahlfors_c, f, std::nullopt, 0.0);
  for (complex z : kGrid) CHECK(std::abs(a0.ratio(z) - std::abs(z) * becker.ratio(z)) < 1e-12);

  for (complex c : {complex(0.3, 0.0), complex(-0.4, 0.2), complex(0.0, 0.5)}) {
    const Criterion weighted = make_criterion(CriterionKind::ahlfors_sigma, f, ahlfors_c_weight(c), c);
    const Criterion plain = make_criterion(CriterionKind::ahlfors_c, f, std::nullopt, c);
    for (complex z : kGrid) {
      const double t = 1.0 - std::norm(z);
      const complex p = pre_schwarzian_analytic(f.h())(z);
      const double closed = std::abs(c * std::norm(z) + t * z * p);
      CHECK(std::abs(plain.ratio(z) - closed) < 1e-12);
      CHECK(std::abs(weighted.ratio(z) - closed) < 1e-12);
    }
  }
}

TEST_CASE("analytic maps: the main criterion collapses to ahlfors_sigma") {
  const HarmonicMap f = HarmonicMap::analytic(Expr::parse("z + 0.15*z^2"));
  for (const SigmaWeight& w : {becker_weight(), ahlfors_c_weight(0.4), aw_weight(f)}) {
    const Criterion main = make_criterion(CriterionKind::main_harmonic_sigma, f, w);
    const Criterion ahl = make_criterion(CriterionKind::ahlfors_sigma, f, w);
    for (complex z : kGrid) CHECK(std::abs(main.ratio(z) - ahl.ratio(z)) < 1e-12);
  }
}

TEST_CASE("Teichmueller maps: the main criterion equals the teichmuller criterion") {
  const HarmonicMap f = HarmonicMap::teichmuller(Expr::parse("z + 0.15*z^2"), complex(0.3, 0.2));
  const Criterion main = make_criterion(CriterionKind::main_harmonic_sigma, f, becker_weight());
  const Criterion teich = make_criterion(CriterionKind::teichmuller, f, becker_weight());
  const Criterion ahl = make_criterion(CriterionKind::ahlfors_sigma, HarmonicMap::analytic(f.h()),
                                       becker_weight());
  for (complex z : kGrid) {
    CHECK(std::abs(main.ratio(z) - teich.ratio(z)) < 1e-12);
    CHECK(std::abs(teich.ratio(z) - ahl.ratio(z)) < 1e-12);
  }
}

TEST_CASE("Ahlfors-Weill weight turns ahlfors_sigma into the Nehari ratio") {
  const HarmonicMap f = HarmonicMap::analytic(Expr::parse("z + 0.2*z^2 + 0.05*z^3"));
  const Criterion ahl = make_criterion(CriterionKind::ahlfors_sigma, f, aw_weight(f));
  const Criterion neh = make_criterion(CriterionKind::nehari, f);
  WeightSpec sv;
  sv.kind = WeightKind::schwarzian_v;
  sv.v = "conj(z)/(1-z*conj(z))";
  const Criterion schw = make_criterion(CriterionKind::ahlfors_schwarzian_v, f, make_weight(sv, &f));
  for (complex z : kGrid) {
    const double t = 1.0 - std::norm(z);
    const double closed = 0.5 * std::abs(schwarzian_analytic(f.h())(z)) * t * t;
    CHECK(std::abs(ahl.ratio(z) - closed) < 1e-12);
    CHECK(std::abs(schw.ratio(z) - closed) < 1e-12);
    const auto n = neh.evaluate(z);
    REQUIRE(n);
    CHECK(std::abs(n->lhs - 2.0 * closed) < 1e-12);
  }
}

TEST_CASE("lambda family: the main lhs never exceeds that of f") {
  const HarmonicMap f = pipeline_map();
  const Criterion base = make_criterion(CriterionKind::main_harmonic_sigma, f, becker_weight());
  for (complex lambda : {complex(0.0), complex(0.5), complex(0.0, -0.8), complex(0.6, 0.8), complex(1.0)}) {
    const Criterion member = make_criterion(CriterionKind::main_harmonic_sigma, f.family_member(lambda),
                                            becker_weight());
    for (complex z : kGrid) {
      const auto a = member.evaluate(z);
      const auto b = base.evaluate(z);
      REQUIRE(a);
      REQUIRE(b);
      CHECK(a->lhs <= b->lhs * (1.0 + 1e-12) + 1e-300);
    }
  }
}

TEST_CASE("literal corollary forms") {
  const HarmonicMap id = HarmonicMap::analytic(Expr::parse("z"));
  WeightSpec sv;
  sv.kind = WeightKind::schwarzian_v;
  sv.v = "conj(z)/(1-z*conj(z))";
  const Criterion cv = make_criterion(CriterionKind::corollary_v, id, make_weight(sv, &id));
  for (complex z : kGrid) CHECK(cv.ratio(z) < 1e-12);

  const HarmonicMap f = pipeline_map();
  const complex c{0.6, 0.1};
  const Criterion cc = make_criterion(CriterionKind::corollary_c, f, std::nullopt, c);
  for (complex z : oracle::polar_points(0.1, 0.9, 5, 16)) {
    const double t = 1.0 - std::norm(z);
    const complex p = harmonic_pre_schwarzian(f, z);
    const complex s = harmonic_schwarzian(f, z);
    const auto w = dilatation_at(f, z);
    const double lhs = std::abs(0.5 * s * t * t - c * (1.0 - c) * std::conj(z)) +
                       std::abs((c * std::conj(z) * t - 0.5 * p * t * t) * w.d1 / (1.0 - std::norm(w.omega)));
    const double rhs = std::abs(c - std::conj(p) * t * t);
    const auto terms = cc.evaluate(z);
    REQUIRE(terms);
    CHECK(std::abs(terms->lhs - lhs) < 1e-12);
    CHECK(std::abs(terms->rhs - rhs) < 1e-12);
  }
}

TEST_CASE("errors: missing weights, degenerate normalizers, orientation") {
  const HarmonicMap f = pipeline_map();
  CHECK_THROWS_AS(make_criterion(CriterionKind::main_harmonic_sigma, f), ParameterError);
  CHECK_THROWS_AS(make_criterion(CriterionKind::ahlfors_schwarzian_v, f, becker_weight()), ParameterError);
  const Criterion c0 = make_criterion(CriterionKind::ahlfors_schwarzian_c, f, std::nullopt, 0.0);
  try {
    c0.evaluate(0.3);
    FAIL("expected a degenerate normalizer");
  } catch (const PointError& e) {
    CHECK(e.kind() == PointError::Kind::degenerate_normalizer);
  }
  const HarmonicMap bad = HarmonicMap::hg(Expr::parse("z"), Expr::parse("z^2"));
  CHECK_THROWS_AS(make_criterion(CriterionKind::hm_harmonic, bad), PointError);
}

TEST_CASE("exclusions near |omega| = 1 and at the center") {
  const HarmonicMap f = HarmonicMap::hg(Expr::parse("z"), Expr::parse("z^2/2"));
  const Criterion cr = make_criterion(CriterionKind::hm_harmonic, f);
  DiskGrid g{16, 32};
  g.boundary_exponent = 45.0;
  const auto r = sup_ratio(cr, g, 0.5, SupOptions{false});
  CHECK(r.excluded > 0);
  REQUIRE(r.first_excluded);
  CHECK(1.0 - std::norm(*r.first_excluded) < 1e-12);
  CHECK_FALSE(make_criterion(CriterionKind::main_harmonic_sigma, pipeline_map(), becker_weight())
                  .evaluate(0.0));
}

TEST_CASE("k-condition") {
  CHECK(k_condition_check(0.2, 0.3));
  CHECK_FALSE(k_condition_check(0.6, 0.3));
  CHECK(k_condition_check(0.999, 0.0));
  CHECK_FALSE(k_condition_check(0.7 / 1.3, 0.3));
}

TEST_CASE("sweeps are deterministic across thread counts") {
  const Criterion cr = make_criterion(CriterionKind::main_harmonic_sigma, pipeline_map(), becker_weight());
  set_thread_count(1);
  const auto one = sup_ratio(cr, DiskGrid{64, 256}, 1.0);
  set_thread_count(3);
  const auto three = sup_ratio(cr, DiskGrid{64, 256}, 1.0);
  set_thread_count(0);
  CHECK(one.k_hat == three.k_hat);
  CHECK(one.witness == three.witness);
  CHECK(one.refinement.size() == three.refinement.size());
  CHECK(one.k_hat == doctest::Approx(0.278048).epsilon(1e-5));
}

TEST_CASE("pass uses a strict comparison with a guard band") {
  CHECK(passes(0.5, 0.6));
  CHECK_FALSE(passes(0.6, 0.6));
  CHECK_FALSE(passes(0.6 - 1e-12, 0.6));
}
