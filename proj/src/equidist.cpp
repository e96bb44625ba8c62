#include "asurf/equidist.hpp"

#include <algorithm>
#include <cmath>

namespace asurf {

double sato_tate_cdf(double x) {
  check(x >= 0 && x <= M_PI + 1e-15, "argument outside [0, pi]");
  return x / M_PI - std::sin(2 * x) / (2 * M_PI);
}

AngleSample angle_sample(const OrbitData& D, const AngleData& A) {
  AngleSample s;
  s.a = D.a;
  s.thetas.reserve(D.maximal_places.size());
  for (std::size_t vi : D.maximal_places) {
    double t = A.theta_place[vi].convert_to<double>();
    check(t > 0 && t < M_PI, "kloosterman angle on the boundary");
    s.thetas.push_back(t);
  }
  std::sort(s.thetas.begin(), s.thetas.end());
  return s;
}

double star_discrepancy(const AngleSample& sample) {
  const std::size_t n = sample.thetas.size();
  check(n > 0, "empty angle sample");
  double best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double F = sato_tate_cdf(sample.thetas[i]);
    best = std::max(best, std::abs(F - static_cast<double>(i) / n));
    best = std::max(best, std::abs(F - static_cast<double>(i + 1) / n));
  }
  return best;
}

double weyl_sum(const AngleSample& sample, int m) {
  check(m >= 1, "symmetric power index must be positive");
  double acc = 0;
  for (double t : sample.thetas) {
    // U_m(cos t) by recurrence
    double c = 2 * std::cos(t);
    double u0 = 1, u1 = c;
    for (int k = 2; k <= m; ++k) {
      double u2 = c * u1 - u0;
      u0 = u1;
      u1 = u2;
    }
    acc += (m == 0) ? u0 : u1;
  }
  return std::abs(acc) / static_cast<double>(sample.thetas.size());
}

GapConstants gap_constants(std::int64_t p) {
  const double l23 = std::log(2.0) / std::log(3.0);
  GapConstants g;
  double n = 3;
  g.sigma_p3 = 2 * n * static_cast<double>(p) * (l23 + (static_cast<double>(p) - 1) * (3 + 2 * l23) + 1);
  auto tau = [&](double N) {
    return 2 * (static_cast<double>(p) - 1) * (l23 + N / 2) + std::log(N) / std::log(3.0);
  };
  g.tau_p3 = tau(3);
  g.tau_p6 = tau(6);
  return g;
}

GapTable min_angle_gap(const OrbitData& D, const AngleData& A) {
  PrecisionGuard guard(A.prec_bits);
  GapTable table;
  Real two_pi = 8 * atan(Real(1));
  // group orbits by size
  std::map<int, std::vector<std::size_t>> by_size;
  for (std::size_t oi = 0; oi < D.orbits.size(); ++oi) by_size[D.orbits[oi].size].push_back(oi);

  auto circ_dist = [&](const Real& x) {
    Real r = fmod(x, two_pi);
    if (r < 0) r += two_pi;
    return std::min(r, Real(two_pi - r), std::less<Real>());
  };

  for (const auto& [size, idxs] : by_size) {
    Real best = two_pi;
    for (std::size_t i : idxs) {
      for (std::size_t j : idxs) {
        Real d1 = circ_dist(A.theta[i] - A.eps[j]);
        Real d2 = circ_dist(A.theta[i] + A.eps[j]);
        Real d = std::min(d1, d2, std::less<Real>());
        if (d < best) best = d;
      }
    }
    check(best > 2 * A.max_err, "angle coincidence within working precision");
    table.min_gap_by_size[size] = best.convert_to<double>();
  }
  table.angle_err = (2 * A.max_err).convert_to<double>();
  return table;
}

}  // namespace asurf
