#pragma once

#include <json.hpp>

#include <memory>
#include <string>

#include "asurf/bsd.hpp"
#include "asurf/chars.hpp"
#include "asurf/equidist.hpp"
#include "asurf/lfun.hpp"
#include "asurf/oracle.hpp"
#include "asurf/orbits.hpp"

namespace asurf {

using Json = nlohmann::json;

struct RunConfig {
  BigInt q{7};
  int a = 1;
  int precision_bits = 256;
  int jobs = 1;
  std::uint64_t oracle_budget = 10000000ull;
  bool allow_small_char = false;
  int psi_shift = 1;
  int max_exact_degree = 512;  // refuse exact-L assembly beyond this degree
  double rh_tol = 1e-8;
  double angle_target_err = 1e-30;
};

// Everything shared by the subcommands for one (q, a): field tower,
// cyclotomic ring, character data, orbits, sums and resolved angles.
struct Run {
  RunConfig config;
  FieldParams params;
  std::unique_ptr<FieldTower> tower;
  std::unique_ptr<CycRing> ring;
  std::unique_ptr<CharContext> chars;
  OrbitData orbits;
  OrbitSums sums;
  AngleData angles;
};

Run build_run(const RunConfig& cfg);

// Assembled per-orbit records: one Gauss and one Kloosterman value with
// their angles, valuations and kappa pair.
struct GaussValue {
  std::size_t orbit = 0;
  CycInt value;
  Real angle;      // eps in [0, 2pi)
  BigRat valuation;  // ord normalised with ord(q) = 1
};

struct KloostermanValue {
  std::size_t orbit = 0;
  CycInt value;    // real element of Z[zeta_p]
  MC kappa1, kappa2;
  Real kappa_err;
  Real angle;      // theta in [0, pi]
};

GaussValue gauss_value(const Run& run, std::size_t oi);
KloostermanValue kloosterman_value(const Run& run, std::size_t oi);

struct LfunArtifacts {
  LResult l;
  int w = 0;
  RHReport rh;
  BigRat lstar;
  Real lstar_angles;
  double lstar_rel_gap = 0;  // |exact - sine product| / exact
};

// Exact pipeline: assembly, functional equation, Riemann hypothesis,
// special value by both routes.
LfunArtifacts compute_lfun(const Run& run);

struct ShaArtifacts {
  Invariants inv;
  TorsionReport torsion;
  ShaReport sha;
  DimShaReport dims;
  double bs_lo = 0, bs_hi = 0;  // Brauer-Siegel range over integral candidates
  double log_lstar_over_logH = 0;
};

ShaArtifacts compute_sha(const Run& run, const LfunArtifacts& lf);

// One line of the trend table; exact columns only when the L-degree is
// within the configured bound.
struct SweepRow {
  int a = 0;
  std::size_t n_orbits = 0;
  double log_lstar_over_logH = 0;
  double bs_lo = 0, bs_hi = 0;
  double dstar = 0;
  double dstar_bound_ratio = 0;  // dstar * q^{a/4} / sqrt(a)
  std::string dim_sha_valuation;
  bool exact_l = false;
};

SweepRow sweep_row(const Run& run);

// JSON with provenance-tagged numbers; unbounded integers as decimal strings.
Json exact_int_json(const BigInt& v);
Json exact_rat_json(const BigRat& v);
Json numeric_json(double v, double err);

Json lfun_json(const Run& run, const LfunArtifacts& lf);
Json sha_json(const Run& run, const LfunArtifacts& lf, const ShaArtifacts& sh);
Json gaps_json(const Run& run);
std::string sha_text_table(const ShaArtifacts& sh);
std::string angles_csv(const Run& run);
std::string discrepancy_summary_csv(const Run& run);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_plot_script();

// Oracle orchestration: direct sums, point counts vs. trace formulas,
// squarefree and discriminant checks, character identity suite.
OracleReport verify_run(const Run& run, int max_count_degree = 3);

}  // namespace asurf
