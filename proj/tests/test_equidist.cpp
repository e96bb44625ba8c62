#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "asurf/pipeline.hpp"

using namespace asurf;

namespace {

Run make_run(std::int64_t q, int a) {
  RunConfig cfg;
  cfg.q = q;
  cfg.a = a;
  cfg.jobs = 2;
  return build_run(cfg);
}

// Simpson quadrature of U_m(cos t) against (2/pi) sin^2 t dt on [0, pi].
double sato_tate_moment(int m, int panels = 20000) {
  auto f = [m](double t) {
    double c = 2 * std::cos(t);
    double u0 = 1, u1 = c;
    for (int k = 2; k <= m; ++k) {
      double u2 = c * u1 - u0;
      u0 = u1;
      u1 = u2;
    }
    double u = (m == 0) ? u0 : u1;
    return u * (2.0 / M_PI) * std::sin(t) * std::sin(t);
  };
  double h = M_PI / panels;
  double acc = f(0) + f(M_PI);
  for (int i = 1; i < panels; ++i) acc += f(i * h) * (i % 2 ? 4 : 2);
  return acc * h / 3;
}

}  // namespace

TEST_CASE("sato-tate cdf closed form") {
  CHECK(sato_tate_cdf(0) == doctest::Approx(0.0));
  CHECK(sato_tate_cdf(M_PI) == doctest::Approx(1.0));
  CHECK(sato_tate_cdf(M_PI / 2) == doctest::Approx(0.5));
  // F(pi/3) = 1/3 - sin(2 pi/3)/(2 pi)
  double expect = 1.0 / 3 - std::sin(2 * M_PI / 3) / (2 * M_PI);
  CHECK(sato_tate_cdf(M_PI / 3) == doctest::Approx(expect));
  CHECK(expect == doctest::Approx(0.1955).epsilon(1e-3));
  CHECK_THROWS(sato_tate_cdf(-0.1));
  CHECK_THROWS(sato_tate_cdf(4.0));
}

TEST_CASE("star discrepancy: one-point formula and range") {
  AngleSample s;
  s.a = 1;
  // single angle at the Sato-Tate median: D* = 1/2
  double median = 0.0;
  for (double lo = 0, hi = M_PI;;) {
    median = (lo + hi) / 2;
    double v = sato_tate_cdf(median);
    if (std::abs(v - 0.5) < 1e-14) break;
    (v < 0.5 ? lo : hi) = median;
  }
  s.thetas = {median};
  CHECK(star_discrepancy(s) == doctest::Approx(0.5));
  // generic single point: D* = max(F, 1 - F)
  s.thetas = {1.0};
  double F = sato_tate_cdf(1.0);
  CHECK(star_discrepancy(s) == doctest::Approx(std::max(F, 1 - F)));
  // always within [0, 1]
  for (auto [q, a] : std::vector<std::pair<std::int64_t, int>>{{7, 1}, {7, 2}, {11, 1}}) {
    Run run = make_run(q, a);
    double d = star_discrepancy(angle_sample(run.orbits, run.angles));
    CHECK(d >= 0);
    CHECK(d <= 1);
  }
}

TEST_CASE("all sampled angles lie strictly inside (0, pi)") {
  Run run = make_run(7, 2);
  AngleSample s = angle_sample(run.orbits, run.angles);
  CHECK(s.thetas.size() == count_places_of_degree(BigInt(7), 2).convert_to<std::size_t>());
  for (double t : s.thetas) {
    CHECK(t > 0);
    CHECK(t < M_PI);
  }
}

TEST_CASE("two presentations of the empirical measure agree: element count identity") {
  // elements of exact degree a partition into places of size a
  Run run = make_run(7, 2);
  BigInt elems_deg2 = BigInt(49 - 7);
  CHECK(elems_deg2 == BigInt(2) * count_places_of_degree(BigInt(7), 2));
  CHECK(run.orbits.maximal_places.size() == 21);
}

TEST_CASE("weyl sums: chebyshev characters integrate to zero against sato-tate") {
  for (int m = 1; m <= 4; ++m) CHECK(std::abs(sato_tate_moment(m)) < 1e-8);
  CHECK(sato_tate_moment(0) == doctest::Approx(1.0));
}

TEST_CASE("weyl sums shrink with the sample (7, a)") {
  double w1 = 0, w3 = 0;
  {
    Run run = make_run(7, 1);
    w1 = weyl_sum(angle_sample(run.orbits, run.angles), 1);
  }
  {
    Run run = make_run(7, 3);
    w3 = weyl_sum(angle_sample(run.orbits, run.angles), 1);
  }
  CHECK(w1 <= 2.0);
  CHECK(w3 <= 2.0);
  CHECK(w3 < w1 + 0.5);  // decay up to noise
}

TEST_CASE("gap constants match their closed formulas") {
  GapConstants g = gap_constants(7);
  double l23 = std::log(2.0) / std::log(3.0);
  CHECK(g.sigma_p3 == doctest::Approx(2 * 3 * 7 * (l23 + 6 * (3 + 2 * l23) + 1)));
  CHECK(g.tau_p3 == doctest::Approx(2 * 6 * (l23 + 1.5) + std::log(3.0) / std::log(3.0)));
  CHECK(g.tau_p6 == doctest::Approx(2 * 6 * (l23 + 3.0) + std::log(6.0) / std::log(3.0)));
  CHECK(g.sigma_p3 > g.tau_p6);
}

TEST_CASE("minimal angle gaps are strictly positive at every orbit size") {
  for (auto [q, a] : std::vector<std::pair<std::int64_t, int>>{{7, 1}, {7, 2}, {11, 1}, {11, 2}}) {
    Run run = make_run(q, a);
    GapTable t = min_angle_gap(run.orbits, run.angles);
    CHECK(!t.min_gap_by_size.empty());
    for (const auto& [size, gap] : t.min_gap_by_size) {
      CHECK(gap > t.angle_err);
      CHECK(gap > 0);
      // the Liouville floor q^{-sigma_p size} is astronomically below any
      // representable gap once positivity holds
      CHECK(gap > std::pow(q, -gap_constants(7).sigma_p3 * size));
    }
  }
}

TEST_CASE("frozen regression: empirical minimum gap of (7,2) at orbit size 2") {
  Run run = make_run(7, 2);
  GapTable t = min_angle_gap(run.orbits, run.angles);
  CHECK(t.min_gap_by_size.at(2) == doctest::Approx(0.001952405701507474).epsilon(1e-9));
  CHECK(t.min_gap_by_size.at(1) == doctest::Approx(0.39825856309176305).epsilon(1e-9));
}

TEST_CASE("gauss angles at fixed orbit size cluster into at most six values (q = 1 mod 3)") {
  Run run = make_run(7, 2);
  PrecisionGuard guard(run.angles.prec_bits);
  // phi = argument of the base-field gauss sum g_{q,1}
  CB g1 = run.ring->embed(run.chars->gauss_raw(1, 1, run.tower->one()), run.angles.prec_bits);
  RB phi = cb_arg(g1, run.angles.prec_bits);
  Real two_pi = 8 * atan(Real(1));
  std::map<int, std::set<long long>> clusters;
  for (std::size_t oi = 0; oi < run.orbits.orbits.size(); ++oi) {
    int size = run.orbits.orbits[oi].size;
    // eps - pr1 |o| phi must be one of {0, 2pi/3, 4pi/3} mod 2pi
    Real delta = run.angles.eps[oi] - run.orbits.orbits[oi].pr1 * size * phi.v;
    Real scaled = delta * 3 / two_pi;
    Real frac = scaled - floor(scaled + Real("0.5"));
    CHECK(abs(frac) < 1e-20);
    long long key = llround((run.angles.eps[oi] * 1e9).convert_to<double>());
    clusters[size].insert(key);
  }
  for (const auto& [size, vals] : clusters) CHECK(vals.size() <= 6);
}

TEST_CASE("discrepancy trend for q = 7 admits one fitted constant") {
  double fitted = 0;
  std::vector<double> dstars;
  for (int a = 1; a <= 3; ++a) {
    Run run = make_run(7, a);
    double d = star_discrepancy(angle_sample(run.orbits, run.angles));
    dstars.push_back(d);
    fitted = std::max(fitted, d * std::pow(7.0, a / 4.0) / std::sqrt(a));
  }
  for (std::size_t i = 0; i < dstars.size(); ++i) {
    int a = static_cast<int>(i) + 1;
    CHECK(dstars[i] <= fitted * std::sqrt(a) / std::pow(7.0, a / 4.0) + 1e-12);
  }
  CHECK(fitted < 5.0);
}
