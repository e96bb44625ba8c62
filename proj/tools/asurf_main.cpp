#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "asurf/pipeline.hpp"

namespace fs = std::filesystem;
using namespace asurf;

namespace {

struct CommonOpts {
  std::string q = "7";
  int a = 1;
  int precision_bits = 256;
  int jobs = 0;
  std::string out = "out";
  std::string format = "text";
  std::uint64_t oracle_budget = 10000000ull;
  int a_max = 4;
  bool allow_small_char = false;
  int psi_shift = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_amax = false) {
  cmd->add_option("--q", o.q, "prime power q = p^e, p >= 7");
  cmd->add_option("--a", o.a, "level of the family member")->check(CLI::Range(1, 16));
  cmd->add_option("--precision-bits", o.precision_bits, "base working precision in bits")
      ->check(CLI::Range(64, 16384));
  cmd->add_option("--jobs", o.jobs, "worker cap; 0 = hardware");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--format", o.format, "stdout format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--oracle-budget", o.oracle_budget, "max point evaluations per oracle count");
  if (with_amax) cmd->add_option("--a-max", o.a_max, "sweep upper level")->check(CLI::Range(1, 16));
  cmd->add_flag("--allow-small-char", o.allow_small_char,
                "relax the characteristic bound to p >= 5 (tags output as out-of-hypothesis)");
  cmd->add_option("--psi-shift", o.psi_shift,
                  "replace psi_0 by its k-th power twist (diagnostics)")
      ->check(CLI::Range(1, 1 << 20));
}

RunConfig to_config(const CommonOpts& o, int a) {
  RunConfig cfg;
  cfg.q = BigInt(o.q);
  cfg.a = a;
  cfg.precision_bits = o.precision_bits;
  cfg.jobs = o.jobs > 0 ? o.jobs : static_cast<int>(std::thread::hardware_concurrency());
  cfg.oracle_budget = o.oracle_budget;
  cfg.allow_small_char = o.allow_small_char;
  cfg.psi_shift = o.psi_shift;
  return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

std::string tag(const CommonOpts& o, int a) {
  return "q" + o.q + "_a" + std::to_string(a);
}

int cmd_lfun(const CommonOpts& o) {
  Run run = build_run(to_config(o, o.a));
  LfunArtifacts lf = compute_lfun(run);
  Json j = lfun_json(run, lf);
  fs::path out = fs::path(o.out) / ("lfun_" + tag(o, o.a) + ".json");
  write_file(out, j.dump(2) + "\n");
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "L-polynomial " << tag(o, o.a) << ": degree " << lf.l.L.degree()
              << ", constant term " << lf.l.L.c[0].str() << "\n"
              << "functional equation sign w = " << lf.w << "\n"
              << "riemann hypothesis max | |z| - 1/q | = " << lf.rh.max_abs_deviation << "\n"
              << "special value L(1/q) = " << numerator(lf.lstar).str() << "/"
              << denominator(lf.lstar).str() << "\n"
              << "sine-product route relative gap = " << lf.lstar_rel_gap << "\n"
              << "artifact: " << out.string() << "\n";
  }
  return 0;
}

int cmd_sha(const CommonOpts& o) {
  Run run = build_run(to_config(o, o.a));
  LfunArtifacts lf = compute_lfun(run);
  ShaArtifacts sh = compute_sha(run, lf);
  Json j = sha_json(run, lf, sh);
  fs::path out = fs::path(o.out) / ("sha_" + tag(o, o.a) + ".json");
  write_file(out, j.dump(2) + "\n");
  std::string table = sha_text_table(sh);
  write_file(fs::path(o.out) / ("sha_" + tag(o, o.a) + ".txt"), table);
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << table << "artifact: " << out.string() << "\n";
  }
  return 0;
}

int cmd_angles(const CommonOpts& o) {
  Run run = build_run(to_config(o, o.a));
  std::string csv = angles_csv(run);
  std::string summary = discrepancy_summary_csv(run);
  fs::path out = fs::path(o.out) / ("angles_" + tag(o, o.a) + ".csv");
  fs::path sout = fs::path(o.out) / ("angles_summary_" + tag(o, o.a) + ".csv");
  fs::path gout = fs::path(o.out) / ("gaps_" + tag(o, o.a) + ".json");
  write_file(out, csv);
  write_file(sout, summary);
  write_file(gout, gaps_json(run).dump(2) + "\n");
  std::cout << summary << "artifacts: " << out.string() << ", " << sout.string() << ", "
            << gout.string() << "\n";
  return 0;
}

int cmd_discrepancy(const CommonOpts& o) {
  Run run = build_run(to_config(o, o.a));
  std::string summary = discrepancy_summary_csv(run);
  fs::path out = fs::path(o.out) / ("discrepancy_" + tag(o, o.a) + ".csv");
  write_file(out, summary);
  std::cout << summary << "artifact: " << out.string() << "\n";
  return 0;
}

int cmd_verify(const CommonOpts& o) {
  Run run = build_run(to_config(o, o.a));
  OracleReport rep = verify_run(run);
  OracleReport ids = identity_suite(*run.chars, run.orbits, run.sums, run.angles.prec_bits);
  for (const auto& l : rep.lines) std::cout << l << "\n";
  for (const auto& l : ids.lines) std::cout << l << "\n";
  bool ok = rep.ok && ids.ok;
  std::cout << (ok ? "verify: all oracles green" : "verify: FAILURES present") << "\n";
  return ok ? 0 : 1;
}

int cmd_sweep(const CommonOpts& o) {
  std::vector<SweepRow> rows;
  for (int a = 1; a <= o.a_max; ++a) {
    Run run = build_run(to_config(o, a));
    rows.push_back(sweep_row(run));
  }
  std::string csv = sweep_csv(rows);
  fs::path out = fs::path(o.out) / ("sweep_q" + o.q + ".csv");
  write_file(out, csv);
  write_file(fs::path(o.out) / "plot_sweep.py", sweep_plot_script());
  std::cout << csv << "artifact: " << out.string() << " (plotter: plot_sweep.py)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact L-functions, BSD data and angle statistics for a family of "
      "Artin-Schreier abelian surfaces over F_q(t)"};
  app.require_subcommand(1);

  CommonOpts o_lfun, o_sha, o_angles, o_disc, o_verify, o_sweep;
  auto* c_lfun = app.add_subcommand("lfun", "assemble and verify the exact L-polynomial");
  add_common(c_lfun, o_lfun);
  auto* c_sha = app.add_subcommand("sha", "BSD ledger: sha candidates, dim sha, Brauer-Siegel");
  add_common(c_sha, o_sha);
  auto* c_angles = app.add_subcommand("angles", "emit Kloosterman angles of the maximal places");
  add_common(c_angles, o_angles);
  auto* c_disc = app.add_subcommand("discrepancy", "star discrepancy against Sato-Tate");
  add_common(c_disc, o_disc);
  auto* c_verify = app.add_subcommand("verify", "run every oracle and identity check");
  add_common(c_verify, o_verify);
  auto* c_sweep = app.add_subcommand("sweep", "trend table over a = 1..a_max");
  add_common(c_sweep, o_sweep, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_lfun->parsed()) return cmd_lfun(o_lfun);
    if (c_sha->parsed()) return cmd_sha(o_sha);
    if (c_angles->parsed()) return cmd_angles(o_angles);
    if (c_disc->parsed()) return cmd_discrepancy(o_disc);
    if (c_verify->parsed()) return cmd_verify(o_verify);
    if (c_sweep->parsed()) return cmd_sweep(o_sweep);
  } catch (const std::exception& e) {
    Json err{{"error", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}
