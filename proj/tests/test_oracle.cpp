#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

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

}  // namespace

TEST_CASE("count of u^3 = wp(t) over F_7 at level 1 is 8") {
  // wp_1 vanishes identically on F_7, so u = 0 is forced: 7 affine + infinity
  CHECK(count_X(FieldParams(7, 1), 1, 1, 1 << 20) == 8);
}

TEST_CASE("X-counts match the gauss trace formula exactly (7,1), (7,2), (13,1)") {
  for (auto [q, a] : std::vector<std::pair<std::int64_t, int>>{{7, 1}, {7, 2}, {13, 1}}) {
    Run run = make_run(q, a);
    for (int k = 1; k <= 3; ++k) {
      BigInt brute = count_X(run.params, a, k, 100000000ull);
      BigInt predicted = predicted_count_X(*run.ring, run.orbits, run.sums, k);
      CHECK(brute == predicted);
    }
  }
}

TEST_CASE("Y-counts match the kloosterman trace formula exactly") {
  for (auto [q, a] : std::vector<std::pair<std::int64_t, int>>{{7, 1}, {7, 2}, {11, 1}}) {
    Run run = make_run(q, a);
    for (int k = 1; k <= 3; ++k) {
      BigInt brute = count_Y(run.params, a, k, 100000000ull);
      BigInt predicted = predicted_count_Y(*run.ring, run.orbits, run.sums, k);
      CHECK(brute == predicted);
    }
  }
}

TEST_CASE("hyperelliptic change of variables preserves counts") {
  for (int k = 1; k <= 2; ++k) {
    CHECK(count_Y(FieldParams(7, 1), 1, k, 100000000ull) ==
          count_Y_pairs(FieldParams(7, 1), 1, k, 100000000ull));
  }
}

TEST_CASE("weil bounds with genus q^a - 1") {
  for (auto [q, a] : std::vector<std::pair<std::int64_t, int>>{{7, 1}, {7, 2}}) {
    FieldParams P(q, 1);
    double genus = std::pow(q, a) - 1;
    for (int k = 1; k <= 2; ++k) {
      double qk = std::pow(q, k);
      for (BigInt n : {count_X(P, a, k, 100000000ull), count_Y(P, a, k, 100000000ull)}) {
        double dev = std::abs(n.convert_to<double>() - qk - 1);
        CHECK(dev <= 2 * genus * std::sqrt(qk) + 1e-9);
      }
    }
  }
}

TEST_CASE("budget guard refuses oversized counts") {
  CHECK_THROWS(count_X(FieldParams(7, 1), 1, 3, 100));
  CHECK_THROWS(count_Y_pairs(FieldParams(7, 1), 1, 2, 100));
}

TEST_CASE("direct summation witnesses every orbit of (7,1) and (7,2)") {
  for (auto [q, a] : std::vector<std::pair<std::int64_t, int>>{{7, 1}, {7, 2}}) {
    Run run = make_run(q, a);
    OracleReport rep = direct_sums_check(*run.chars, run.orbits, run.sums, 1000000ull, 2);
    CHECK(rep.ok);
  }
}

TEST_CASE("squarefree: gcd(wp^2 - 4, derivative) = 1") {
  CHECK(squarefree_check(FieldParams(7, 1), 1));
  CHECK(squarefree_check(FieldParams(7, 1), 2));
  CHECK(squarefree_check(FieldParams(11, 1), 1));
  CHECK(squarefree_check(FieldParams(13, 1), 2));
}

TEST_CASE("sextic discriminant identity on random specializations") {
  CHECK(disc_identity_check(FieldParams(7, 1), 1, 10));
  CHECK(disc_identity_check(FieldParams(11, 1), 2, 10));
}

TEST_CASE("identity suite is green on (7,1), (11,1) and (13,1)") {
  for (auto [q, a] : std::vector<std::pair<std::int64_t, int>>{{7, 1}, {11, 1}, {13, 1}}) {
    Run run = make_run(q, a);
    OracleReport rep = identity_suite(*run.chars, run.orbits, run.sums, run.angles.prec_bits);
    for (const auto& line : rep.lines) {
      INFO(line);
      CHECK(line.substr(0, 2) == "ok");
    }
    CHECK(rep.ok);
  }
}

TEST_CASE("verify_run aggregates to green for (7,1)") {
  Run run = make_run(7, 1);
  OracleReport rep = verify_run(run);
  CHECK(rep.ok);
}
