#include <doctest.h>

#include <cmath>
#include <vector>

#include "pdc/errors.hpp"
#include "pdc/multimode.hpp"

using namespace pdc;

namespace {

// mode set with prescribed pair parameters x_k
ModeDistribution modes_from_x(std::vector<double> xs) {
  ModeDistribution m;
  for (double x : xs) {
    m.lambda.push_back(1.0);
    m.r.push_back(std::atanh(std::sqrt(x)));
  }
  return m;
}

}  // namespace

TEST_CASE("mode profile construction") {
  auto m = build_modes(0.5, 2.0, 5, 0.1);
  REQUIRE(m.k_max() == 5);
  double root = std::sqrt(0.5);
  for (int k = 0; k < 5; ++k) {
    CHECK(m.lambda[std::size_t(k)] ==
          doctest::Approx(root * std::pow(0.5, k)).epsilon(1e-14));
    CHECK(m.r[std::size_t(k)] ==
          doctest::Approx(2.0 * m.lambda[std::size_t(k)]).epsilon(1e-15));
  }
  CHECK(m.mu == 0.5);
  CHECK(m.gain == 2.0);
}

TEST_CASE("heavy mode tails are rejected") {
  // 0.9^40 ~ 1.5e-2 still above the default 1e-4 tolerance
  CHECK_THROWS_AS(build_modes(0.9, 1.0, 40), ModeTailTooHeavy);
  CHECK_NOTHROW(build_modes(0.9, 1.0, 40, 0.05));
  CHECK_THROWS_AS(build_modes(-0.1, 1.0, 4), ConfigError);
  CHECK_THROWS_AS(build_modes(1.0, 1.0, 4), ConfigError);
  CHECK_THROWS_AS(build_modes(0.5, -1.0, 4), ConfigError);
  CHECK_THROWS_AS(build_modes(0.5, 1.0, 0), ConfigError);
}

TEST_CASE("auto mode count tracks the profile tolerance") {
  // smallest k with 0.5^k < 1e-6 is 20
  CHECK(build_modes_auto(0.5, 1.0).k_max() == 20);
  CHECK(build_modes_auto(0.0, 1.0).k_max() == 1);
  CHECK_THROWS_AS(build_modes_auto(0.999999, 1.0, 1e-6, 100),
                  ModeTailTooHeavy);
}

TEST_CASE("schmidt number round trip") {
  CHECK(mu_from_schmidt(1.0) == 0.0);
  CHECK(mu_from_schmidt(2.0) ==
        doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-15));
  CHECK_THROWS_AS(mu_from_schmidt(0.5), ConfigError);
  for (double k : {1.0, 2.0, 5.0, 10.0}) {
    auto m = build_modes_auto(mu_from_schmidt(k), 1.0);
    // K = (sum lambda^2)^2 / sum lambda^4 = (1 + mu^2)/(1 - mu^2) up to the
    // dropped 1e-6 profile tail
    CHECK(schmidt_number(m) == doctest::Approx(k).epsilon(1e-9));
  }
}

TEST_CASE("total photon number via complete homogeneous polynomials") {
  // x = {0.3, 0.1}: h_0..h_3 = 1, 0.4, 0.13, 0.04 and A^2 = 0.7 * 0.9
  auto m = modes_from_x({0.3, 0.1});
  auto d = total_photon_distribution(m);
  double a2 = 0.63;
  CHECK(d.probs[0] == doctest::Approx(a2).epsilon(1e-13));
  CHECK(d.probs[1] == doctest::Approx(a2 * 0.4).epsilon(1e-13));
  CHECK(d.probs[2] == doctest::Approx(a2 * 0.13).epsilon(1e-13));
  CHECK(d.probs[3] == doctest::Approx(a2 * 0.04).epsilon(1e-13));
  double sum = 0.0;
  for (double w : d.probs) sum += w;
  CHECK(sum + d.truncation_deficit == doctest::Approx(1.0).epsilon(1e-12));
  // independent thermal modes add their means
  CHECK(d.mean() ==
        doctest::Approx(0.3 / 0.7 + 0.1 / 0.9).epsilon(1e-12));
}

TEST_CASE("single-mode limit reproduces the single-mode evaluator") {
  auto det = pnr_coeffs(1, 0.8, 0.01);
  for (double b : {0.2, 0.88, 1.36}) {
    auto m = build_modes(0.0, b, 1);
    auto mm = multimode_herald(m, det);
    auto sm = herald_report(SqueezeParam(b), det);
    CHECK(mm.heralding_probability ==
          doctest::Approx(sm.heralding_probability).epsilon(1e-14));
    CHECK(mm.fidelity == doctest::Approx(sm.fidelity).epsilon(1e-14));
  }
}

TEST_CASE("ideal pnr fidelity is the leading-mode weight ratio") {
  auto det = pnr_coeffs(1, 1.0, 0.0);
  auto m = build_modes_auto(mu_from_schmidt(2.0), 1.0);
  double sum_x = 0.0;
  for (double r : m.r) sum_x += std::tanh(r) * std::tanh(r);
  double x0 = std::tanh(m.r[0]) * std::tanh(m.r[0]);
  auto rep = multimode_herald(m, det);
  // c_N = N eta (1-eta)^{N-1} at eta = 1 picks N = 1, so F = x_0 / sum_k x_k
  CHECK(rep.fidelity == doctest::Approx(x0 / sum_x).epsilon(1e-12));
  CHECK(rep.fidelity < 1.0);
}

TEST_CASE("weak-gain fidelity limit is set by the mode profile") {
  // as B -> 0, x_k ~ B^2 lambda_k^2, so F -> lambda_0^2 / sum lambda_k^2,
  // which is 1 - mu^2 = 2/(K+1) for the geometric profile
  auto det = pnr_coeffs(1, 1.0, 0.0);
  auto m = build_modes_auto(mu_from_schmidt(2.0), 1e-4);
  auto rep = multimode_herald(m, det);
  CHECK(rep.fidelity == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("multimode report bundles the unheralded distribution") {
  auto det = binary_coeffs(0.9, 0.0, BinaryOutcome::Click);
  auto m = build_modes_auto(0.4, 0.9);
  auto rep = multimode_herald(m, det);
  auto total = total_photon_distribution(m);
  double a2 = 1.0;
  for (double r : m.r) a2 /= std::cosh(r) * std::cosh(r);
  CHECK(rep.vacuum_prefactor == doctest::Approx(a2).epsilon(1e-14));
  REQUIRE(rep.total.probs.size() >= total.probs.size());
  for (std::size_t n = 0; n < total.probs.size(); ++n)
    CHECK(rep.total.probs[n] == doctest::Approx(total.probs[n]).epsilon(1e-13));
  // the binary herald misses the vacuum only
  CHECK(rep.heralding_probability < 1.0 - rep.total.probs[0] + 1e-12);
}

TEST_CASE("multimode frontier matches direct evaluation") {
  DetectorModel det;  // pnr(1), eta 1
  double mu = mu_from_schmidt(5.0);
  std::vector<double> gains{0.3, 0.7, 1.1};
  auto pts = multimode_frontier(mu, gains, det);
  REQUIRE(pts.size() == 3);
  auto series = det.coefficients();
  for (std::size_t i = 0; i < gains.size(); ++i) {
    CHECK(pts[i].status == PointStatus::Ok);
    CHECK(pts[i].param == gains[i]);
    auto rep = multimode_herald(build_modes_auto(mu, gains[i]), series);
    CHECK(pts[i].fidelity == rep.fidelity);
    CHECK(pts[i].heralding_probability == rep.heralding_probability);
  }
  // gain 0 never fires the pnr herald
  std::vector<double> off{0.0};
  CHECK(multimode_frontier(mu, off, det)[0].status ==
        PointStatus::DegenerateHerald);
}
