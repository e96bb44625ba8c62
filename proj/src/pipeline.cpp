#include "asurf/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace asurf {

Run build_run(const RunConfig& cfg) {
  Run run;
  run.config = cfg;
  run.params = FieldParams::from_q(cfg.q, cfg.allow_small_char);
  int deg = run_tower_degree(run.params, cfg.a);
  run.tower = std::make_unique<FieldTower>(run.params.p, deg);
  run.ring = std::make_unique<CycRing>(run.params.p);
  run.chars = std::make_unique<CharContext>(*run.tower, *run.ring, run.params, cfg.psi_shift);
  run.orbits = enumerate_orbits(*run.tower, run.params, cfg.a);
  run.sums = compute_sums(*run.chars, run.orbits, cfg.jobs);
  run.angles = compute_angles(*run.ring, run.orbits, run.sums, cfg.precision_bits,
                              cfg.angle_target_err);
  return run;
}

GaussValue gauss_value(const Run& run, std::size_t oi) {
  check(oi < run.orbits.orbits.size(), "orbit index out of range");
  return GaussValue{oi, run.sums.gauss[oi], run.angles.eps[oi],
                    gauss_valuation(run.orbits, run.orbits.orbits[oi])};
}

KloostermanValue kloosterman_value(const Run& run, std::size_t oi) {
  check(oi < run.orbits.orbits.size(), "orbit index out of range");
  // raise precision until the kappa pair is numerically distinct
  int bits = run.angles.prec_bits;
  for (;;) {
    try {
      KappaPair kp = kappa_split(*run.ring, run.sums.kloos[oi], run.params.q,
                                 run.orbits.orbits[oi].size, bits);
      return KloostermanValue{oi,    run.sums.kloos[oi], kp.k1, kp.k2,
                              kp.err, run.angles.theta[oi]};
    } catch (const std::runtime_error&) {
      check(bits < 16384, "kappa split unresolved at maximal precision");
      bits *= 2;
    }
  }
}

LfunArtifacts compute_lfun(const Run& run) {
  const BigInt qa = pow_bigint(run.params.q, static_cast<std::uint64_t>(run.orbits.a));
  BigInt deg = 4 * (qa - 1);
  check(deg <= run.config.max_exact_degree,
        "exact L-polynomial degree exceeds the configured bound; use the sweep route");
  LfunArtifacts lf;
  lf.l = l_polynomial(*run.ring, run.orbits, run.sums, run.config.jobs);
  lf.w = verify_functional_equation(lf.l.L, run.params.q);
  // automatic precision doubling before declaring an RH failure
  int rh_bits = run.config.precision_bits;
  int rh_cap = std::max(4096, 2 * (lf.l.L.degree() + 256));
  for (;;) {
    lf.rh = verify_riemann_hypothesis(lf.l.L, run.params.q, run.orbits, run.angles,
                                      run.config.rh_tol, rh_bits, run.config.jobs);
    if (lf.rh.pass || lf.rh.prec_bits >= rh_cap) break;
    rh_bits = 2 * lf.rh.prec_bits;
  }
  check(lf.rh.pass, "riemann hypothesis verification failed");
  lf.lstar = special_value(lf.l.L, run.params.q);
  int bits = std::max(run.config.precision_bits, run.angles.prec_bits);
  lf.lstar_angles = special_value_angles(run.angles, bits);
  {
    PrecisionGuard guard(bits);
    Real exactv = Real(numerator(lf.lstar)) / Real(denominator(lf.lstar));
    lf.lstar_rel_gap = (abs(exactv - lf.lstar_angles) / exactv).convert_to<double>();
  }
  check(lf.lstar_rel_gap < 1e-6, "special-value double entry disagrees");
  return lf;
}

ShaArtifacts compute_sha(const Run& run, const LfunArtifacts& lf) {
  ShaArtifacts sh;
  sh.inv = invariants(run.params, run.orbits.a);
  // deg N - 8 = deg L, asserted every run
  check(sh.inv.deg_N - 8 == lf.l.L.degree(), "conductor degree inconsistent with L-degree");
  sh.torsion = torsion_bound(run.params, run.orbits.a);
  sh.sha = sha_candidates(lf.lstar, sh.inv, sh.torsion);
  sh.dims = dim_sha(run.orbits, &lf.l.L);
  check(sh.dims.valuation_route == 0, "dim sha valuation route nonzero");
  check(sh.dims.newton_route.has_value() && *sh.dims.newton_route == 0,
        "dim sha newton route nonzero");
  bool first = true;
  for (const auto& cand : sh.sha.table) {
    if (!cand.integral) continue;
    double bs = brauer_siegel_ratio(cand, sh.inv);
    if (first) {
      sh.bs_lo = sh.bs_hi = bs;
      first = false;
    } else {
      sh.bs_lo = std::min(sh.bs_lo, bs);
      sh.bs_hi = std::max(sh.bs_hi, bs);
    }
  }
  sh.log_lstar_over_logH = log_ratio_special_value(lf.lstar, sh.inv);
  return sh;
}

SweepRow sweep_row(const Run& run) {
  SweepRow row;
  row.a = run.orbits.a;
  row.n_orbits = run.orbits.orbits.size();
  Invariants inv = invariants(run.params, run.orbits.a);
  TorsionReport torsion = torsion_bound(run.params, run.orbits.a);
  DimShaReport dims = dim_sha(run.orbits, nullptr);
  row.dim_sha_valuation = dims.valuation_route.str();

  const BigInt qa = pow_bigint(run.params.q, static_cast<std::uint64_t>(run.orbits.a));
  BigInt deg = 4 * (qa - 1);
  if (deg <= run.config.max_exact_degree) {
    LfunArtifacts lf = compute_lfun(run);
    ShaArtifacts sh = compute_sha(run, lf);
    row.log_lstar_over_logH = sh.log_lstar_over_logH;
    row.bs_lo = sh.bs_lo;
    row.bs_hi = sh.bs_hi;
    row.exact_l = true;
  } else {
    // numeric route: log L* from the sine product
    int bits = std::max(run.config.precision_bits, run.angles.prec_bits);
    PrecisionGuard guard(bits);
    Real logl = log_special_value_angles(run.angles, bits);
    Real logH = Real(inv.h) * log(Real(run.params.q));
    row.log_lstar_over_logH = (logl / logH).convert_to<double>();
    bool first = true;
    // Brauer-Siegel candidates: 1 + (log L* + 2 log t - log q^2 - log c)/log H
    for (int c : inv.c_infty_candidates) {
      for (std::uint64_t t = 1; t <= torsion.bound.convert_to<std::uint64_t>(); ++t) {
        if (torsion.bound % t != 0) continue;
        Real bs = 1 + (logl + 2 * log(Real(t)) - 2 * log(Real(run.params.q)) - log(Real(c))) / logH;
        double b = bs.convert_to<double>();
        if (first) {
          row.bs_lo = row.bs_hi = b;
          first = false;
        } else {
          row.bs_lo = std::min(row.bs_lo, b);
          row.bs_hi = std::max(row.bs_hi, b);
        }
      }
    }
    row.exact_l = false;
  }

  AngleSample sample = angle_sample(run.orbits, run.angles);
  row.dstar = star_discrepancy(sample);
  double q = run.params.q.convert_to<double>();
  row.dstar_bound_ratio = row.dstar * std::pow(q, run.orbits.a / 4.0) / std::sqrt(run.orbits.a);
  return row;
}

Json exact_int_json(const BigInt& v) {
  return Json{{"provenance", "exact"}, {"value", v.str()}};
}

Json exact_rat_json(const BigRat& v) {
  return Json{{"provenance", "exact"},
              {"num", numerator(v).str()},
              {"den", denominator(v).str()}};
}

Json numeric_json(double v, double err) {
  return Json{{"provenance", "numeric"}, {"value", v}, {"err", err}};
}

Json lfun_json(const Run& run, const LfunArtifacts& lf) {
  Json j;
  j["schema"] = "asurf.lfun.v1";
  j["q"] = run.params.q.str();
  j["a"] = run.orbits.a;
  j["p"] = run.params.p;
  j["e"] = run.params.e;
  j["modulus"] = run.tower->modulus_string();
  j["psi_shift"] = run.config.psi_shift;
  j["out_of_hypothesis"] = (run.params.p < 7);
  Json coeffs = Json::array();
  for (const auto& c : lf.l.L.c) coeffs.push_back(c.str());
  j["coeffs"] = coeffs;
  j["degree"] = lf.l.L.degree();
  j["functional_equation_sign"] = lf.w;
  j["rh_max_abs_deviation"] = numeric_json(lf.rh.max_abs_deviation, 0.0);
  j["rh_precision_bits"] = lf.rh.prec_bits;
  j["special_value"] = exact_rat_json(lf.lstar);
  j["special_value_sine_product_rel_gap"] = numeric_json(lf.lstar_rel_gap, 0.0);
  j["n_orbits"] = run.orbits.orbits.size();
  j["n_places"] = run.orbits.places.size();
  return j;
}

Json sha_json(const Run& run, const LfunArtifacts& lf, const ShaArtifacts& sh) {
  Json j;
  j["schema"] = "asurf.sha.v1";
  j["q"] = run.params.q.str();
  j["a"] = run.orbits.a;
  j["modulus"] = run.tower->modulus_string();
  j["out_of_hypothesis"] = (run.params.p < 7);
  j["height_exponent"] = exact_int_json(sh.inv.h);
  j["conductor_degree"] = exact_int_json(sh.inv.deg_N);
  j["conductor_exponents"] = Json{{"finite_bad", sh.inv.cond_finite_bad},
                                  {"infinity", sh.inv.cond_infty},
                                  {"good", sh.inv.cond_good}};
  j["tamagawa"] = Json{{"away_from_infinity", 1}, {"infinity_candidates", sh.inv.c_infty_candidates}};
  j["rank"] = sh.inv.rank;
  j["regulator"] = exact_int_json(sh.inv.reg);
  j["special_value"] = exact_rat_json(lf.lstar);
  j["torsion_bound"] = exact_int_json(sh.torsion.bound);
  j["torsion_bound_prime_to_p"] = exact_int_json(sh.torsion.prime_to_p);
  j["torsion_caveat"] = sh.torsion.caveat;
  j["torsion_gcd_stabilized"] = sh.torsion.stabilized;
  Json places = Json::array();
  for (const auto& pc : sh.torsion.places) {
    places.push_back(Json{{"place", pc.label},
                          {"degree", pc.degree},
                          {"jacobian_order", exact_int_json(pc.jacobian_order)}});
  }
  j["torsion_places"] = places;
  Json table = Json::array();
  for (const auto& cand : sh.sha.table) {
    table.push_back(Json{{"c_infty", cand.c_infty},
                         {"torsion", cand.torsion.str()},
                         {"sha", exact_rat_json(cand.sha)},
                         {"integral", cand.integral}});
  }
  j["sha_candidates"] = table;
  j["integral_candidates"] = sh.sha.integral_count;
  j["dim_sha_valuation_route"] = sh.dims.valuation_route.str();
  if (sh.dims.newton_route) j["dim_sha_newton_route"] = sh.dims.newton_route->str();
  j["brauer_siegel_lo"] = numeric_json(sh.bs_lo, 0.0);
  j["brauer_siegel_hi"] = numeric_json(sh.bs_hi, 0.0);
  j["log_lstar_over_logH"] = numeric_json(sh.log_lstar_over_logH, 0.0);
  return j;
}

std::string sha_text_table(const ShaArtifacts& sh) {
  std::ostringstream os;
  os << "height exponent h = " << sh.inv.h.str() << ", deg N = " << sh.inv.deg_N.str()
     << ", rank = 0, Reg = 1\n";
  os << "torsion bound (gcd over " << sh.torsion.places.size()
     << " good places) = " << sh.torsion.bound.str() << " [prime-to-p certified part "
     << sh.torsion.prime_to_p.str() << "]\n";
  os << "note: " << sh.torsion.caveat << "\n";
  os << "dim sha: valuation route = " << sh.dims.valuation_route.str();
  if (sh.dims.newton_route) os << ", newton route = " << sh.dims.newton_route->str();
  os << "\n\n";
  os << std::left << std::setw(8) << "c_inf" << std::setw(10) << "torsion" << std::setw(44)
     << "sha candidate" << "integral\n";
  for (const auto& cand : sh.sha.table) {
    std::string v = numerator(cand.sha).str();
    if (denominator(cand.sha) != 1) v += "/" + denominator(cand.sha).str();
    if (v.size() > 42) v = v.substr(0, 39) + "...";
    os << std::left << std::setw(8) << cand.c_infty << std::setw(10) << cand.torsion.str()
       << std::setw(44) << v << (cand.integral ? "yes" : "no") << "\n";
  }
  return os.str();
}

std::string angles_csv(const Run& run) {
  std::ostringstream os;
  os << "beta_key,theta,place_degree\n";
  os << std::setprecision(17);
  for (std::size_t vi : run.orbits.maximal_places) {
    const auto& v = run.orbits.places[vi];
    os << run.tower->key(v.rep) << "," << run.angles.theta_place[vi].convert_to<double>() << ","
       << v.size << "\n";
  }
  return os.str();
}

std::string discrepancy_summary_csv(const Run& run) {
  AngleSample sample = angle_sample(run.orbits, run.angles);
  double dstar = star_discrepancy(sample);
  double q = run.params.q.convert_to<double>();
  double ratio = dstar * std::pow(q, run.orbits.a / 4.0) / std::sqrt(run.orbits.a);
  std::ostringstream os;
  os << "a,n_max_places,dstar,dstar_bound_ratio,weyl_1,weyl_2,weyl_3\n";
  os << std::setprecision(17);
  os << run.orbits.a << "," << sample.thetas.size() << "," << dstar << "," << ratio << ","
     << weyl_sum(sample, 1) << "," << weyl_sum(sample, 2) << "," << weyl_sum(sample, 3) << "\n";
  return os.str();
}

Json gaps_json(const Run& run) {
  GapTable gaps = min_angle_gap(run.orbits, run.angles);
  GapConstants gc = gap_constants(run.params.p);
  Json j;
  j["schema"] = "asurf.gaps.v1";
  j["q"] = run.params.q.str();
  j["a"] = run.orbits.a;
  Json table = Json::array();
  for (const auto& [size, gap] : gaps.min_gap_by_size) {
    // the Liouville floor q^{-sigma_p |o|} is reported, never asserted
    table.push_back(Json{{"orbit_size", size},
                         {"min_gap", numeric_json(gap, gaps.angle_err)},
                         {"liouville_floor_log10", -gc.sigma_p3 * size *
                                                       std::log10(run.params.q.convert_to<double>())}});
  }
  j["min_gap_by_size"] = table;
  j["sigma_p3"] = gc.sigma_p3;
  j["tau_p3"] = gc.tau_p3;
  j["tau_p6"] = gc.tau_p6;
  return j;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "a,n_orbits,log_lstar_over_logH,bs_lo,bs_hi,dstar,dstar_bound_ratio,dim_sha_valuation,"
        "exact_l\n";
  os << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.a << "," << r.n_orbits << "," << r.log_lstar_over_logH << "," << r.bs_lo << ","
       << r.bs_hi << "," << r.dstar << "," << r.dstar_bound_ratio << "," << r.dim_sha_valuation
       << "," << (r.exact_l ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string sweep_plot_script() {
  return R"(#!/usr/bin/env python3
"""Plot the sweep table produced by `asurf sweep`."""
import csv
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "sweep.csv"
rows = list(csv.DictReader(open(path)))
a = [int(r["a"]) for r in rows]
ratio = [float(r["log_lstar_over_logH"]) for r in rows]
bs_lo = [float(r["bs_lo"]) for r in rows]
bs_hi = [float(r["bs_hi"]) for r in rows]
dstar = [float(r["dstar"]) for r in rows]

fig, axes = plt.subplots(1, 3, figsize=(14, 4))
axes[0].plot(a, ratio, "o-")
axes[0].axhline(0, color="gray", lw=0.5)
axes[0].set_xlabel("a")
axes[0].set_title("log L* / log H")
axes[1].fill_between(a, bs_lo, bs_hi, alpha=0.3)
axes[1].plot(a, bs_lo, "v-", label="low")
axes[1].plot(a, bs_hi, "^-", label="high")
axes[1].axhline(1, color="gray", lw=0.5)
axes[1].set_xlabel("a")
axes[1].set_title("Brauer-Siegel candidate range")
axes[1].legend()
axes[2].semilogy(a, dstar, "s-")
axes[2].set_xlabel("a")
axes[2].set_title("star discrepancy")
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=150)
print(out)
)";
}

OracleReport verify_run(const Run& run, int max_count_degree) {
  OracleReport rep;
  auto sums = direct_sums_check(*run.chars, run.orbits, run.sums, run.config.oracle_budget,
                                run.config.jobs);
  rep.ok = rep.ok && sums.ok;
  for (auto& l : sums.lines) rep.lines.push_back(std::move(l));

  for (int k = 1; k <= max_count_degree; ++k) {
    BigInt qk = pow_bigint(run.params.q, static_cast<std::uint64_t>(k));
    if (qk > run.config.oracle_budget) {
      rep.lines.push_back("skip point counts at extension degree " + std::to_string(k) +
                          " (budget)");
      continue;
    }
    BigInt nx = count_X(run.params, run.orbits.a, k, run.config.oracle_budget);
    BigInt px = predicted_count_X(*run.ring, run.orbits, run.sums, k);
    rep.note(nx == px, "count of u^3 = wp(t) over degree-" + std::to_string(k) +
                           " extension matches the trace formula (" + nx.str() + ")");
    BigInt ny = count_Y(run.params, run.orbits.a, k, run.config.oracle_budget);
    BigInt py = predicted_count_Y(*run.ring, run.orbits, run.sums, k);
    rep.note(ny == py, "count of v + 1/v = wp(t) over degree-" + std::to_string(k) +
                           " extension matches the trace formula (" + ny.str() + ")");
    BigInt q2k = pow_bigint(run.params.q, static_cast<std::uint64_t>(2 * k));
    if (q2k <= run.config.oracle_budget) {
      BigInt npairs = count_Y_pairs(run.params, run.orbits.a, k, run.config.oracle_budget);
      rep.note(npairs == ny, "hyperelliptic change of variables preserves the degree-" +
                                 std::to_string(k) + " count");
    }
  }

  rep.note(squarefree_check(run.params, run.orbits.a), "wp(t)^2 - 4 is squarefree");
  rep.note(disc_identity_check(run.params, run.orbits.a, 8),
           "sextic discriminant identity on random specializations");
  return rep;
}

}  // namespace asurf
