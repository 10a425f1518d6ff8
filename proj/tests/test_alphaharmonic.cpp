#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "jlip/alphaharmonic.hpp"
#include "jlip/errors.hpp"
#include "jlip/metrics.hpp"
#include "jlip/specfun.hpp"

using namespace jlip;
using namespace jlip::alphaharmonic;
using metrics::DiskPoint;

namespace {

AlphaHarmonicMap single(double alpha, int k, Complex c) {
  CoefficientSequence seq;
  seq.set(k, c);
  return AlphaHarmonicMap(alpha, std::move(seq));
}

// random map per the sweep recipe: support <= max_support, |k| <= 8
AlphaHarmonicMap random_map(Rng& rng, double alpha, int max_support) {
  CoefficientSequence seq;
  const int n = 1 + static_cast<int>(rng.uniform(0.0, max_support));
  int placed = 0;
  while (placed < n) {
    int k = 1 + static_cast<int>(rng.uniform(0.0, 8.0));
    if (rng.uniform01() < 0.5) k = -k;
    try {
      seq.set(k, {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
      ++placed;
    } catch (const DomainError&) {
      // duplicate index; try again
    }
  }
  return AlphaHarmonicMap(alpha, std::move(seq));
}

AlphaHarmonicMap scaled_to_condition(const AlphaHarmonicMap& m, double target) {
  const double s = contraction_condition(m).value;
  CoefficientSequence seq;
  for (const auto& [k, c] : m.coeffs().entries()) seq.set(k, c * (target / s));
  return AlphaHarmonicMap(m.alpha(), std::move(seq));
}

}  // namespace

TEST_CASE("coefficient sequence validation") {
  CoefficientSequence seq;
  CHECK_THROWS_AS(seq.set(0, {1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(seq.set(65, {1.0, 0.0}), DomainError);
  seq.set(2, {1.0, 0.0});
  CHECK_THROWS_AS(seq.set(2, {0.5, 0.0}), DomainError);
  seq.set(-2, {0.5, 0.0});  // opposite side of the same order is fine
  CHECK(seq.entries().size() == 2);
}

TEST_CASE("alpha must exceed -1") {
  CoefficientSequence seq;
  seq.set(1, {1.0, 0.0});
  CHECK_THROWS_AS(AlphaHarmonicMap(-1.0, seq), DomainError);
  CHECK_THROWS_AS(AlphaHarmonicMap(-1.5, seq), DomainError);
  CHECK_NOTHROW(AlphaHarmonicMap(-0.999, seq));
}

TEST_CASE("evaluation examples") {
  // alpha = 0 with c_1 = 1 is the identity
  const auto ident = single(0.0, 1, {1.0, 0.0});
  const Complex z{0.3, 0.4};
  CHECK(ident(z) == z);
  CHECK(ident({0.0, 0.0}) == Complex{0.0, 0.0});

  // alpha = 2, c_2 = 1: f(z) = (1 - |z|^2/3) z^2, terminating factor
  const auto quad = single(2.0, 2, {1.0, 0.0});
  const double want = (1.0 - 0.25 / 3.0) * 0.25;  // 11/48
  CHECK(std::abs(quad({0.5, 0.0}) - Complex{want, 0.0}) < 1e-15);
  CHECK(std::abs(want - 11.0 / 48.0) < 1e-16);
}

TEST_CASE("alpha = 0 collapses to the plain polynomial") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = random_map(rng, 0.0, 8);
    for (int i = 0; i < 20; ++i) {
      const Complex z = rng.disk_point(1e-3);
      Complex direct{0.0, 0.0};
      for (const auto& [k, c] : m.coeffs().entries()) {
        const int order = std::abs(k);
        Complex pw{1.0, 0.0};
        const Complex base = k > 0 ? z : std::conj(z);
        for (int j = 0; j < order; ++j) pw *= base;
        direct += c * pw;
      }
      CHECK(std::abs(m(z) - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("rotation equivariance of single-coefficient maps") {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    int k = 1 + static_cast<int>(rng.uniform(0.0, 6.0));
    if (rng.uniform01() < 0.5) k = -k;
    const double alpha = rng.uniform(-0.9, 4.0);
    const auto m = single(alpha, k, {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
    const Complex z = rng.disk_point(1e-2);
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const Complex rot{std::cos(theta), std::sin(theta)};
    const Complex lhs = m(rot * z);
    const Complex factor = std::polar(1.0, k * theta);
    const Complex rhs = factor * m(z);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("operator residual of exact solutions") {
  // identity solves the alpha = 0 equation; stencils are exact on it
  const MapFn ident = [](Complex z) { return z; };
  const Complex res0 =
      operator_residual(ident, 0.0, DiskPoint(Complex{0.3, 0.2}), 1e-3);
  CHECK(std::abs(res0) < 1e-9);

  // alpha = 2 expansion solution: residual is pure stencil error, order 2
  const auto quad = single(2.0, 2, {1.0, 0.0});
  const DiskPoint z(Complex{0.4, 0.1});
  const double r1 = std::abs(operator_residual(quad.fn(), 2.0, z, 1e-3));
  const double r2 = std::abs(operator_residual(quad.fn(), 2.0, z, 5e-4));
  CHECK(r1 / r2 > 3.0);
  CHECK(r1 / r2 < 5.0);
}

TEST_CASE("operator residual flags non-solutions") {
  // z^2 is holomorphic but not in the alpha = 2 kernel:
  // the residual equals z^2 (1-|z|^2)^{-3}
  const MapFn sq = [](Complex z) { return z * z; };
  const Complex res = operator_residual(sq, 2.0, DiskPoint(Complex{0.5, 0.0}), 1e-3);
  const double want = 0.25 / std::pow(0.75, 3.0);
  CHECK(std::abs(res - Complex{want, 0.0}) < 1e-6);
  CHECK(std::abs(want - 0.5925925925925926) < 1e-15);
}

TEST_CASE("operator residual rejects oversized steps") {
  const MapFn ident = [](Complex z) { return z; };
  CHECK_THROWS_AS(operator_residual(ident, 0.0, DiskPoint(Complex{0.95, 0.0}), 0.01),
                  StepError);
}

TEST_CASE("membership property: residual shrinks at order 2") {
  Rng rng(77);
  const double alphas[] = {-0.5, 1.0, 2.0, 3.0};
  for (int trial = 0; trial < 12; ++trial) {
    const double alpha = alphas[trial % 4];
    const auto m = random_map(rng, alpha, 4);
    const MapFn fn = m.fn();
    for (int i = 0; i < 5; ++i) {
      const Complex z = 0.7 * rng.disk_point(1e-3);
      const double r1 = std::abs(operator_residual(fn, alpha, DiskPoint(z), 1e-3));
      const double r2 = std::abs(operator_residual(fn, alpha, DiskPoint(z), 5e-4));
      if (r1 < 1e-12 && r2 < 1e-12) continue;  // stencil-exact component
      const double ratio = r1 / r2;
      CHECK(ratio > 3.0);
      CHECK(ratio < 5.0);
    }
  }
}

TEST_CASE("contraction condition examples") {
  // alpha = 0: every factor sum is 1
  CoefficientSequence seq;
  seq.set(1, {0.5, 0.0});
  seq.set(-1, {0.5, 0.0});
  const AlphaHarmonicMap sym(0.0, seq);
  const auto res = contraction_condition(sym);
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(res.satisfied);

  // alpha = 2, c_2 = 1.5: inner sum 2/3
  const auto quad = single(2.0, 2, {1.5, 0.0});
  const auto res2 = contraction_condition(quad);
  CHECK(res2.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(res2.satisfied);

  // overweight: S = 2
  const auto heavy = single(0.0, 1, {2.0, 0.0});
  const auto res3 = contraction_condition(heavy);
  CHECK(res3.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_FALSE(res3.satisfied);
}

TEST_CASE("majorant condition dominates the signed condition") {
  // alpha = 2, c_2 = 1.5: |1| + |-1/3| = 4/3 per unit weight
  const auto quad = single(2.0, 2, {1.5, 0.0});
  CHECK(majorant_condition(quad) == doctest::Approx(2.0).epsilon(1e-13));
  // nonpositive alpha: coefficients are one-signed, the sums agree
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const double alpha = rng.uniform(-0.9, 0.0);
    const auto m = random_map(rng, alpha, 6);
    const double s = contraction_condition(m).value;
    const double a = majorant_condition(m);
    CHECK(a >= s - 1e-12);
    if (alpha <= 0.0) CHECK(a == doctest::Approx(s).epsilon(1e-10));
  }
}

TEST_CASE("inner factor sums match the gamma closed form") {
  // F(-a/2, k-a/2; k+1; 1) = Gamma(k+1)Gamma(1+a) / (Gamma(k+1+a/2)Gamma(1+a/2))
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const double alpha = rng.uniform(-0.9, 6.0);
    const int k = 1 + static_cast<int>(rng.uniform(0.0, 20.0));
    const double got =
        specfun::gauss_2f1_at_one(-alpha / 2.0, k - alpha / 2.0, k + 1.0);
    const double want =
        std::exp(std::lgamma(k + 1.0) + std::lgamma(1.0 + alpha) -
                 std::lgamma(k + 1.0 + alpha / 2.0) - std::lgamma(1.0 + alpha / 2.0));
    CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("lipschitz sweep on the identity") {
  const MapFn ident = [](Complex z) { return z; };
  const auto rep = verify_lipschitz_j(ident, 1.0, {11, 20000, 1e-3});
  CHECK(rep.pass);
  CHECK(rep.max_value == 1.0);
}

TEST_CASE("condition implies contraction for nonpositive alpha") {
  // harmonic case of the sweep contract, plus random nonpositive alpha
  CoefficientSequence seq;
  seq.set(1, {0.6, 0.0});
  seq.set(-1, {0.4, 0.0});
  const AlphaHarmonicMap m(0.0, seq);
  CHECK(contraction_condition(m).value == doctest::Approx(1.0));
  const auto rep = verify_lipschitz_j(m.fn(), 1.0, {13, 100000, 1e-3});
  CHECK(rep.pass);
  CHECK(rep.flagged == 0);

  Rng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const double alpha = rng.uniform(-0.9, 0.0);
    const auto map = scaled_to_condition(random_map(rng, alpha, 8), 1.0 - 1e-6);
    const auto r = verify_lipschitz_j(
        map.fn(), 1.0, {100u + static_cast<std::uint64_t>(trial), 20000, 1e-3});
    CHECK(r.pass);
  }
}

TEST_CASE("signed condition does not cap the sweep for positive alpha") {
  // documented behavior: S = 1 admits ratios above 1 when the series
  // coefficients alternate in sign (alpha > 0)
  const auto quad = single(2.0, 2, {1.5, 0.0});
  CHECK(contraction_condition(quad).satisfied);
  const double ratio = metrics::j_disk(quad({0.9, 0.0}), quad({0.95, 0.0})) /
                       metrics::j_disk({0.9, 0.0}, {0.95, 0.0});
  CHECK(ratio > 1.0 + 1e-3);
  // while the majorant-scaled version contracts
  CoefficientSequence seq;
  seq.set(2, {1.5 * (1.0 - 1e-6) / majorant_condition(quad), 0.0});
  const AlphaHarmonicMap maj(2.0, seq);
  const auto rep = verify_lipschitz_j(maj.fn(), 1.0, {15, 50000, 1e-3});
  CHECK(rep.pass);
}

TEST_CASE("bound decomposition equalities on the identity") {
  const auto ident = single(0.0, 1, {1.0, 0.0});
  const DiskPoint z(Complex{0.3, 0.1});
  const DiskPoint w(Complex{-0.2, 0.4});
  const auto d = bound_decomposition(ident, z, w);
  const double dist = std::abs(z.value() - w.value());
  CHECK(d.num_bound == doctest::Approx(dist).epsilon(1e-13));
  CHECK(d.den_bound ==
        doctest::Approx(1.0 - std::abs(z.value())).epsilon(1e-13));
  CHECK(d.holds);
  CHECK(d.majorant_holds);
}

TEST_CASE("bound decomposition on expansion solutions") {
  const auto quad = single(2.0, 2, {1.5, 0.0});
  const auto d =
      bound_decomposition(quad, DiskPoint(Complex{0.5, 0.0}), DiskPoint(Complex{0.2, 0.0}));
  CHECK(d.holds);
  // den side is an identity for a single order: equality
  CHECK(d.lhs_clearance == doctest::Approx(d.den_bound).epsilon(1e-12));

  CoefficientSequence seq;
  seq.set(1, {0.5, 0.0});
  seq.set(-1, {0.5, 0.0});
  const AlphaHarmonicMap sym(0.0, seq);
  const auto d2 =
      bound_decomposition(sym, DiskPoint(Complex{0.7, 0.0}), DiskPoint(Complex{-0.7, 0.0}));
  CHECK(d2.holds);
  CHECK(d2.num_bound == doctest::Approx(1.4).epsilon(1e-13));
  CHECK(d2.den_bound == doctest::Approx(0.3).epsilon(1e-13));
}

TEST_CASE("double sum against a brute-force oracle") {
  // terminating case alpha = 2: two explicit terms
  //   D(r) = sum_n a_n (1 + r + ... + r^{2n+k-1}), a_0 = 1, a_1 = -(k-1)/(k+1)
  const int k = 2;
  const double r = 0.5;
  const auto quad = single(2.0, k, {1.0, 0.0});
  const auto d =
      bound_decomposition(quad, DiskPoint(Complex{r, 0.0}), DiskPoint(Complex{0.2, 0.0}));
  double brute = 0.0;
  {
    const double a1 = -(k - 1.0) / (k + 1.0);
    double geo0 = 0.0, geo1 = 0.0;
    for (int s = 0; s < k; ++s) geo0 += std::pow(r, s);
    for (int s = 0; s < 2 + k; ++s) geo1 += std::pow(r, s);
    brute = geo0 + a1 * geo1;
  }
  CHECK(d.num_bound / std::abs(0.5 - 0.2) == doctest::Approx(brute).epsilon(1e-12));

  // non-terminating alpha = 1, k = 3: truncated triple sum
  const int k3 = 3;
  const auto m = single(1.0, k3, {1.0, 0.0});
  const double r3 = 0.6;
  const auto d3 =
      bound_decomposition(m, DiskPoint(Complex{r3, 0.0}), DiskPoint(Complex{0.1, 0.0}));
  double a_n = 1.0, acc = 0.0;
  for (int n = 0; n < 4000; ++n) {
    double geo = 0.0;
    for (int s = 0; s < 2 * n + k3; ++s) geo += std::pow(r3, s);
    acc += a_n * geo;
    a_n *= (-0.5 + n) * (k3 - 0.5 + n) / ((k3 + 1.0 + n) * (n + 1.0));
  }
  CHECK(d3.num_bound / std::abs(r3 - 0.1) == doctest::Approx(acc).epsilon(1e-6));
}

TEST_CASE("sharpness scan") {
  std::vector<double> radii;
  for (int t = 1; t <= 20; ++t) radii.push_back(1.0 - std::pow(2.0, -t));

  SUBCASE("identity parameters give ratio exactly 1") {
    const auto scan = sharpness_scan(1, 1, false, radii);
    CHECK(scan.pass);
    for (const double r : scan.ratios) CHECK(r == 1.0);
  }

  SUBCASE("cubic radial map approaches the bound from below") {
    const auto scan = sharpness_scan(2, 1, false, radii);
    CHECK(scan.pass);
    CHECK(scan.monotone);
    CHECK(scan.max_ratio <= 1.0 + 1e-9);
    CHECK(scan.ratios.back() > 0.999);
  }

  SUBCASE("hand-evaluated pair (0.8, 0.9)") {
    const auto scan = sharpness_scan(2, 1, false, {0.8, 0.9});
    // f-values 0.512 and 0.729; j-values log(1.8007...) and log 2
    const double want =
        std::log1p((0.729 - 0.512) / (1.0 - 0.729)) / std::log(2.0);
    CHECK(scan.ratios[0] == doctest::Approx(want).epsilon(1e-12));
    CHECK(std::abs(scan.ratios[0] - 0.8486) < 1.5e-4);
  }

  SUBCASE("conjugated variant agrees on the real axis") {
    const auto a = sharpness_scan(3, 2, false, radii);
    const auto b = sharpness_scan(3, 2, true, radii);
    for (std::size_t i = 0; i < a.ratios.size(); ++i)
      CHECK(a.ratios[i] == b.ratios[i]);
  }

  SUBCASE("invalid radii are rejected") {
    CHECK_THROWS_AS(sharpness_scan(2, 1, false, {0.9, 0.8}), DomainError);
    CHECK_THROWS_AS(sharpness_scan(2, 1, false, {0.5}), DomainError);
    CHECK_THROWS_AS(sharpness_scan(0, 1, false, {0.5, 0.6}), DomainError);
  }
}

TEST_CASE("evaluate validates the disk point") {
  const auto ident = single(0.0, 1, {1.0, 0.0});
  CHECK_THROWS_AS(evaluate(ident, DiskPoint(Complex{1.0, 0.0})), DomainError);
  CHECK(evaluate(ident, DiskPoint(Complex{0.25, 0.25})) == Complex{0.25, 0.25});
}
