#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "shearcount/error.hpp"
#include "shearcount/exact_formula.hpp"

using namespace shearcount;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const double kRoot125 = std::sqrt(1.25);
}  // namespace

TEST_CASE("sawtooth values and floor convention") {
  CHECK(sawtooth(0.0) == 0.5);
  CHECK(sawtooth(0.25) == 0.25);
  CHECK(sawtooth(-0.25) == -0.25);
  CHECK(sawtooth(3.0) == 0.5);
}

TEST_CASE("property: sawtooth is 1-periodic, odd off the integers, mean zero") {
  oracle::Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double t = rng.uniform(-100, 100);
    CHECK(sawtooth(t + 1.0) == Approx(sawtooth(t)).epsilon(1e-12));
    if (std::abs(t - std::nearbyint(t)) > 1e-9) CHECK(sawtooth(-t) == Approx(-sawtooth(t)).epsilon(1e-9));
    CHECK(sawtooth(t) > -0.5);
    CHECK(sawtooth(t) <= 0.5);
  }
  // midpoint rule is exact for the linear pieces
  double sum = 0.0;
  const int n = 4096;
  for (int i = 0; i < n; ++i) sum += sawtooth((i + 0.5) / n);
  CHECK(std::abs(sum / n) < 1e-15);
}

TEST_CASE("p_sum by direct summation") {
  CHECK(p_sum(1.0) == 2.0);
  CHECK(p_sum(2.0) == Approx(4.0 + 4.0 * std::sqrt(3.0)).epsilon(1e-15));
  CHECK(p_sum(1.5) == Approx(2.0 * (1.5 + 2.0 * kRoot125)).epsilon(1e-15));
  CHECK(p_sum(1.5) == Approx(7.472136).epsilon(1e-7));
  for (double t : {0.3, 3.7, 25.0, 123.456})
    CHECK(p_sum(t) == Approx(static_cast<double>(oracle::direct_p(t))).epsilon(1e-13));
  CHECK_THROWS_AS(p_sum(0.0), InvalidParameter);
  CHECK_THROWS_AS(p_sum(-2.0), InvalidParameter);
}

TEST_CASE("scaled_p_sum is y P(T / sqrt(y))") {
  for (double y : {0.5, 1.0, 2.3})
    for (double t : {0.7, 5.5, 41.0})
      CHECK(scaled_p_sum(y, t) == Approx(y * p_sum(t / std::sqrt(y))).epsilon(1e-12));
}

TEST_CASE("h_sum hand evaluations") {
  CHECK(h_sum({0.0, 1.0}, 0.5) == 0.0);
  CHECK(h_sum({0.0, 1.0}, 1.5) == Approx(4.0 * oracle::sawtooth_ref(kRoot125)).epsilon(1e-14));
  CHECK(h_sum({0.0, 1.0}, 1.5) == Approx(1.527864).epsilon(1e-6));
  CHECK(h_sum({0.5, 1.0}, 1.5) ==
        Approx(2.0 * (oracle::sawtooth_ref(kRoot125 + 0.5) + oracle::sawtooth_ref(kRoot125 - 0.5))).epsilon(1e-14));
  CHECK(h_sum({0.5, 1.0}, 1.5) == Approx(-0.472136).epsilon(1e-6));
  CHECK_THROWS_AS(h_sum({0.0, 1.0}, 2e6), RangeExceeded);
}

TEST_CASE("property: h_sum symmetry in x") {
  oracle::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform(0, 1);
    const double y = rng.uniform(0.5, 4);
    const double radius = rng.uniform(1, 60);
    if (lemma_count({x, y}, radius).ties) continue;
    const double h = h_sum({x, y}, radius);
    CHECK(h_sum({-x, y}, radius) == Approx(h).epsilon(1e-9));
    CHECK(h_sum({x + 1.0, y}, radius) == Approx(h).epsilon(1e-9));
  }
}

TEST_CASE("lemma_count reproduces the counts") {
  const Decomposition a = lemma_count({0.0, 1.0}, 1.5);
  CHECK(a.main_term == Approx(7.472136).epsilon(1e-7));
  CHECK(a.oscillatory == Approx(1.527864).epsilon(1e-6));
  CHECK(std::abs(a.correction) < 1e-15);
  CHECK(a.total == Approx(9.0).epsilon(1e-12));

  const Decomposition b = lemma_count({0.5, 1.0}, 1.5);
  CHECK(b.total == Approx(7.0).epsilon(1e-12));
  CHECK(b.oscillatory == Approx(-0.472136).epsilon(1e-6));

  const Decomposition c = lemma_count({0.0, 1.0}, 0.5);
  CHECK(c.main_term == 1.0);
  CHECK(c.oscillatory == 0.0);
  CHECK(c.correction == 0.0);
  CHECK(c.total == 1.0);
}

TEST_CASE("the m = 0 correction follows the strict count at ties") {
  CHECK(center_row_correction(1.0, 1.5) == Approx(0.0));
  CHECK(center_row_correction(1.0, 1.3) == Approx(1.0 - 2.0 * 0.3).epsilon(1e-12));
  CHECK(center_row_correction(1.0, 2.0) == -1.0);
  CHECK(center_row_correction(4.0, 4.0) == -1.0);
  // exact even at a tie of the center row: |n| < 2 gives three points
  CHECK(lemma_count({0.3, 1.0}, 2.0).total == Approx(static_cast<double>(oracle::brute_count(0.3L, 1.0L, 2.0L))));
}

TEST_CASE("property: the decomposition identity on random tie-free cases") {
  oracle::Rng rng(2718);
  int compared = 0;
  for (int i = 0; i < 1000; ++i) {
    const ShearPoint z{rng.uniform(0, 1), rng.uniform(0.5, 4)};
    const double radius = 150.0 - 149.0 * rng.uniform(0, 1);
    const Decomposition d = lemma_count(z, radius);
    const CountResult e = count_enumerate(z, radius);
    if (d.ties || e.ties) continue;
    ++compared;
    const double rounded = std::nearbyint(d.total);
    REQUIRE(static_cast<std::int64_t>(rounded) == e.count);
    REQUIRE(std::abs(d.total - rounded) < 1e-6);
  }
  CHECK(compared > 950);
}

TEST_CASE("remainder examples") {
  CHECK(remainder({0.0, 1.0}, 1.0, CountMethod::Enumerate) == Approx(1.0 - kPi));
  CHECK(remainder({0.0, 1.0}, 2.0, CountMethod::RowSlice) == Approx(9.0 - 4.0 * kPi));
  CHECK(remainder({0.5, 1.0}, 1.5, CountMethod::Formula) == Approx(7.0 - 2.25 * kPi));
  CHECK(remainder({0.5, 1.0}, 1.5, CountMethod::Formula) == Approx(-0.068583).epsilon(1e-5));
}

TEST_CASE("property: remainder minus H is controlled by the P error") {
  oracle::Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const ShearPoint z{rng.uniform(0, 1), rng.uniform(0.5, 4)};
    const double radius = rng.uniform(2.0 * std::sqrt(z.y), 120);
    const double scaled = radius / std::sqrt(z.y);
    if (lemma_count(z, radius).ties) continue;
    const double gap = std::abs(remainder(z, radius, CountMethod::RowSlice) - h_sum(z, radius));
    const double rhs = z.y * std::abs(p_error(scaled)) + 1.0;
    CHECK(gap <= rhs + 1e-9 * radius * radius);
    CHECK(rhs <= z.y * p_error_bound(scaled) + 1.0);
  }
}

TEST_CASE("p_error values") {
  CHECK(p_error(1.0) == Approx(2.0 - kPi).epsilon(1e-15));
  CHECK(p_error(2.0) == Approx(-1.6381673840836638).epsilon(1e-13));
  // mpmath at 40 digits: P(10) - 100 pi = -3.70743273414748999542
  CHECK(p_error(10.0) == Approx(-3.70743273414749).epsilon(1e-12));
  CHECK_THROWS_AS(p_error(0.9), InvalidParameter);
}

TEST_CASE("p_error_bound formula and guarantee") {
  CHECK(p_error_bound(2.0) == Approx(1.0 / (2.0 * std::sqrt(3.0)) + 8.0 * std::sqrt(3.0)).epsilon(1e-14));
  CHECK(p_error_bound(2.0) == Approx(14.145).epsilon(1e-4));
  const double r = std::sqrt(199.0);
  CHECK(p_error_bound(100.0) == Approx(99.0 / (2.0 * r) + 8.0 * r).epsilon(1e-14));
  CHECK(p_error_bound(100.0) == Approx(116.4).epsilon(1e-3));
  for (double t = 2.0; t < 5000.0; t *= 1.09) CHECK(std::abs(p_error(t)) <= p_error_bound(t));
  CHECK_THROWS_AS(p_error_bound(1.5), InvalidParameter);
}

TEST_CASE("inscribed polygon: area equals P and misses area from below") {
  CHECK(polygon_area(1) == Approx(2.0).epsilon(1e-15));
  CHECK(polygon_area(2) == Approx(10.928203).epsilon(1e-7));
  CHECK(polygon_area(500) == Approx(p_sum(500.0)).epsilon(1e-9));
  const Eigen::Matrix2Xd v = inscribed_polygon(3);
  CHECK(v.cols() == 12);
  CHECK((v.colwise().squaredNorm().array() - 9.0).abs().maxCoeff() < 1e-12);
  for (std::int64_t k = 1; k <= 500; ++k) {
    REQUIRE(polygon_area(k) == Approx(p_sum(static_cast<double>(k))).epsilon(1e-9));
    REQUIRE(p_error(static_cast<double>(k)) < 0.0);
  }
  CHECK_THROWS_AS(polygon_area(0), InvalidParameter);
}

TEST_CASE("polygon deficit floor") {
  CHECK(polygon_deficit(1) == Approx(kPi - 2.0));
  CHECK(polygon_deficit(2) == Approx(1.6381673840836638));
  // the floor sqrt(2k - 1) is already violated at k = 2 ...
  CHECK(polygon_deficit(2) < std::sqrt(3.0));
  // ... while deficit >= sqrt(k) holds on the whole range
  for (std::int64_t k = 2; k <= 100; ++k) CHECK(polygon_deficit(k) >= std::sqrt(static_cast<double>(k)));
}

TEST_CASE("sawtooth_integral against quadrature-free values") {
  CHECK(sawtooth_integral(7.0, 0) == 0.0);
  // mpmath references
  CHECK(sawtooth_integral(2.0, 1) == Approx(0.04719755119659775).epsilon(1e-12));
  CHECK(sawtooth_integral(10.0, 9) == Approx(0.17001231142711865).epsilon(1e-12));
  CHECK(sawtooth_integral(2.0, 1) <= 1.0 / (8.0 * std::sqrt(3.0)));
  CHECK_THROWS_AS(sawtooth_integral(5.0, 5), InvalidParameter);
  CHECK_THROWS_AS(sawtooth_integral(5.0, -1), InvalidParameter);
}

TEST_CASE("integration-by-parts identity for I_T(M)") {
  for (double t : {5.0, 10.0, 50.0, 200.0, 7.5, 33.3}) {
    const SawtoothIdentity id = sawtooth_identity(t);
    CHECK(id.upper == static_cast<std::int64_t>(std::floor(t)) - 1);
    CHECK(std::abs(id.lhs - id.rhs) < 1e-8);
    CHECK(id.integral >= 0.0);
    CHECK(id.integral <= id.integral_bound);
    // the variant with a full f_T(M) is off by exactly half of it
    CHECK(std::abs(id.lhs - (id.rhs - 0.5 * id.edge)) == Approx(0.5 * id.edge).epsilon(1e-9));
  }
}
