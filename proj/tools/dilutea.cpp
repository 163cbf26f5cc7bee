// Command-line front end: closed-form mass spectra and amplitudes, the
// identity verification suites, finite-N Bethe solves, and p-sweeps emitting
// plot-ready data. Artifacts are deterministic for identical configurations.

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dilutea/bethe.hpp"
#include "dilutea/model.hpp"
#include "dilutea/qproducts.hpp"
#include "dilutea/spectrum.hpp"
#include "dilutea/verifier.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16g", v);
  return buf;
}

dilutea::Truncation truncation_from_env() {
  dilutea::Truncation tr;
  if (const char* env = std::getenv("DILUTE_SPECTRA_MAX_TERMS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v >= 1) tr.max_terms = static_cast<std::size_t>(v);
  }
  return tr;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

struct NomeInput {
  std::optional<double> p, x, eps;

  dilutea::NomeFrame frame(const dilutea::ModelParams& mp) const {
    const int given = int(p.has_value()) + int(x.has_value()) + int(eps.has_value());
    if (given != 1)
      throw std::domain_error("exactly one of --p, --x, --eps must be given");
    if (p) return dilutea::frame_from_p(*p, mp);
    if (x) return dilutea::frame_from_x(*x, mp);
    return dilutea::frame_from_eps(*eps, mp);
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--p", p, "elliptic nome p = e^{-eps}, 0 < p < 1");
    cmd->add_option("--x", x, "conjugate nome x = e^{-pi^2/(r eps)}, 0 < x < 1");
    cmd->add_option("--eps", eps, "deviation-from-criticality parameter eps > 0");
  }
};

int cmd_masses(int L, const NomeInput& nome, const std::string& format,
               const std::string& out_path, const dilutea::Truncation& tr) {
  const auto mp = dilutea::params_for(L);
  const auto f = nome.frame(mp);
  const auto sp = dilutea::mass_spectrum(L, f.p, tr);

  std::string artifact;
  if (format == "json") {
    ordered_json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = "masses";
    doc["L"] = L;
    doc["p"] = f.p;
    doc["x"] = f.x;
    doc["eps"] = f.eps;
    doc["rows"] = ordered_json::array();
    for (const auto& e : sp.entries) {
      ordered_json row;
      row["j"] = e.j;
      row["label"] = e.label;
      row["a_set"] = dilutea::excitation(L, e.j).a_set;
      row["m"] = e.m;
      row["xi"] = e.xi;
      row["parity"] = dilutea::to_string(e.parity);
      doc["rows"].push_back(row);
    }
    artifact = doc.dump(2) + "\n";
  } else {
    artifact = "L,p,j,label,a_set,m,xi,parity\n";
    for (const auto& e : sp.entries) {
      std::string aset;
      for (int a : dilutea::excitation(L, e.j).a_set) {
        if (!aset.empty()) aset += ';';
        aset += std::to_string(a);
      }
      artifact += std::to_string(L) + "," + fmt_double(f.p) + "," +
                  std::to_string(e.j) + "," + e.label + "," + aset + "," +
                  fmt_double(e.m) + "," + fmt_double(e.xi) + "," +
                  dilutea::to_string(e.parity) + "\n";
    }
  }
  write_file(out_path, artifact);

  std::printf("masses: L=%d p=%.6g -> %zu excitations (%s)\n", L, f.p,
              sp.entries.size(), out_path.c_str());
  for (const auto& e : sp.entries) {
    const std::string tag =
        e.label == std::to_string(e.j) ? std::string() : "/" + e.label;
    std::printf("  j=%d%-3s m=%.12g xi=%.12g m/m1=%.9g %s\n", e.j, tag.c_str(),
                e.m, e.xi, e.m / sp.entries.front().m,
                dilutea::to_string(e.parity));
  }
  return 0;
}

int cmd_amplitudes(const std::string& format, const std::string& out_path) {
  const auto a = dilutea::amplitudes();
  std::string artifact;
  if (format == "json") {
    ordered_json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = "amplitudes";
    doc["fs_xi1_sq"] = a.fs_xi1_sq;
    doc["R_xi_plus"] = a.R_xi_plus;
    doc["R_xi_minus"] = a.R_xi_minus;
    doc["xi0_ratio"] = a.xi0_ratio;
    artifact = doc.dump(2) + "\n";
  } else {
    artifact = "name,value\nfs_xi1_sq," + fmt_double(a.fs_xi1_sq) +
               "\nR_xi_plus," + fmt_double(a.R_xi_plus) + "\nR_xi_minus," +
               fmt_double(a.R_xi_minus) + "\nxi0_ratio," + fmt_double(a.xi0_ratio) +
               "\n";
  }
  write_file(out_path, artifact);
  std::printf("f_s xi_1^2  = %.9f\n", a.fs_xi1_sq);
  std::printf("R_xi^+      = %.9f\n", a.R_xi_plus);
  std::printf("R_xi^-      = %.9f\n", a.R_xi_minus);
  std::printf("xi0+/xi0-   = %.9f\n", a.xi0_ratio);
  return 0;
}

int cmd_verify(const std::string& suite, int nsamples, std::uint64_t seed,
               const std::string& out_path, const dilutea::Truncation& tr) {
  using dilutea::verify::Report;
  const std::array<double, 3> xs = {0.05, 0.1, 0.2};
  Report rep;
  if (suite == "poch") {
    rep = dilutea::verify::check_poch_identities(5 * nsamples, seed, tr);
  } else if (suite == "recurrences") {
    for (int j = 1; j <= 7; ++j) {
      auto r = dilutea::verify::check_recurrence_solution(j, xs, nsamples, seed, tr);
      rep.cases.insert(rep.cases.end(), r.cases.begin(), r.cases.end());
    }
  } else if (suite == "assembly") {
    for (int j = 1; j <= 7; ++j) {
      auto r = dilutea::verify::check_assembly(j, xs, nsamples, seed, tr);
      rep.cases.insert(rep.cases.end(), r.cases.begin(), r.cases.end());
    }
  } else if (suite == "all") {
    rep = dilutea::verify::check_all(xs, nsamples, seed, tr);
  } else {
    throw std::domain_error("unknown suite: " + suite);
  }

  ordered_json doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = "verify";
  doc["suite"] = suite;
  doc["samples"] = nsamples;
  doc["seed"] = seed;
  doc["cases"] = ordered_json::array();
  for (const auto& c : rep.cases) {
    ordered_json jc;
    jc["name"] = c.name;
    jc["samples"] = c.samples;
    jc["max_dev"] = c.max_dev;
    jc["tol"] = c.tol;
    jc["pass"] = c.pass;
    if (c.name.rfind("assembly", 0) == 0) jc["constant"] = c.measured;
    doc["cases"].push_back(jc);
    std::printf("[%s] %-38s max_dev=%.3e tol=%.0e\n", c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.max_dev, c.tol);
  }
  doc["all_pass"] = rep.all_pass();
  write_file(out_path, doc.dump(2) + "\n");

  if (!rep.all_pass()) {
    std::fprintf(stderr, "verify: FAILURES (worst deviation %.3e)\n", rep.worst());
    for (const auto& c : rep.cases)
      if (!c.pass)
        std::fprintf(stderr, "  %s: max_dev=%.3e > tol=%.1e\n", c.name.c_str(),
                     c.max_dev, c.tol);
    return 1;
  }
  std::printf("verify: all %zu cases pass (worst deviation %.3e)\n",
              rep.cases.size(), rep.worst());
  return 0;
}

int cmd_bethe(int L, int N, const NomeInput& nome, int j, int ell, int branch,
              const std::string& out_path, const dilutea::Truncation& tr) {
  namespace bt = dilutea::bethe;
  const auto mp = dilutea::params_for(L);
  if (N <= 0 || N % 2 != 0) throw std::domain_error("--N must be even and positive");
  if (j != 0 && L != 4)
    throw std::domain_error("excited ansaetze need --L 4 (string data)");
  const auto f = nome.frame(mp);
  const double x = f.x;
  bt::ContinuationOptions opt;
  opt.trunc = tr;

  const auto ansatz = j == 0 ? bt::AnsatzSpec::ground() : bt::AnsatzSpec::excitation(j, mp);
  bt::SectorChoice sector;
  if (ell > 0) {
    sector = {ell, branch < 0 ? 0 : branch};
  } else {
    sector = j == 0 ? bt::scan_ground_sector(std::min(N, 4), mp, x, opt)
                    : bt::scan_excited_sector(j, mp, x, opt);
  }

  const auto st = bt::solve(N, mp, x, ansatz, sector, opt);
  const dilutea::cplx w = dilutea::isotropic_w(f, mp);

  ordered_json doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = "bethe";
  doc["L"] = L;
  doc["N"] = N;
  doc["x"] = x;
  doc["j"] = j;
  doc["ell"] = st.sector.ell;
  doc["branch"] = st.sector.branch;
  doc["converged"] = st.converged;
  doc["max_residual"] = st.max_residual;
  doc["roots"] = ordered_json::array();
  for (const auto& wj : st.roots())
    doc["roots"].push_back({wj.real(), wj.imag()});
  doc["string_phases"] = ordered_json::array();
  for (const auto& b : st.string_phases())
    doc["string_phases"].push_back({b.real(), b.imag()});

  const auto ev = bt::transfer_eigenvalue(st, w, tr);
  doc["log_lambda"] = {ev.log_lambda.real(), ev.log_lambda.imag()};
  if (j > 0) {
    const auto gsec = ell > 0 ? bt::SectorChoice{ell, 0}
                              : bt::scan_ground_sector(std::min(N, 4), mp, x, opt);
    const auto ground = bt::solve(N, mp, x, bt::AnsatzSpec::ground(), gsec, opt);
    const dilutea::cplx meas = bt::measured_log_ratio(st, ground, w, tr);
    const double closed = bt::closed_form_log_ratio(j, mp, x, w, tr);
    doc["log_lambda_ratio"] = {meas.real(), meas.imag()};
    doc["closed_form_log_r"] = closed;
    doc["deviation"] = std::abs(meas - closed);
    std::printf("bethe: N=%d x=%g j=%d ell=%d branch=%d residual=%.2e "
                "ln(L_j/L_0)=%.12g closed=%.12g dev=%.3e\n",
                N, x, j, st.sector.ell, st.sector.branch, st.max_residual,
                meas.real(), closed, std::abs(meas - closed));
  } else {
    std::printf("bethe: N=%d x=%g ground ell=%d branch=%d residual=%.2e "
                "log Lambda0=%.12g\n",
                N, x, st.sector.ell, st.sector.branch, st.max_residual,
                ev.log_lambda.real());
  }
  write_file(out_path, doc.dump(2) + "\n");
  return 0;
}

int cmd_scan(int L, double p_min, double p_max, int count,
             const std::string& out_path, const dilutea::Truncation& tr) {
  if (!(p_min > 0.0 && p_max < 1.0 && p_min <= p_max))
    throw std::domain_error("need 0 < --p-min <= --p-max < 1");
  if (count < 2) throw std::domain_error("--count must be at least 2");
  const auto mp = dilutea::params_for(L);

  std::string csv = "p,j,m,m_asymptotic,ratio\n";
  for (int i = 0; i < count; ++i) {
    const double t = double(i) / (count - 1);
    const double p = p_min * std::pow(p_max / p_min, t);
    const auto sp = dilutea::mass_spectrum(L, p, tr);
    for (const auto& e : sp.entries) {
      const double as = dilutea::asymptotic_mass(dilutea::excitation(L, e.j), p, mp);
      csv += fmt_double(p) + "," + std::to_string(e.j) + "," + fmt_double(e.m) +
             "," + fmt_double(as) + "," + fmt_double(e.m / as) + "\n";
    }
  }
  write_file(out_path, csv);
  std::printf("scan: L=%d, %d points in [%g, %g] x %zu excitations -> %s\n", L,
              count, p_min, p_max, dilutea::excitation_table(L).size(),
              out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dilute A_L excitation spectra, correlation lengths and "
               "Bethe-equation numerics (regime 2)"};
  app.require_subcommand(1);
  const dilutea::Truncation tr = truncation_from_env();

  // masses
  auto* masses = app.add_subcommand("masses", "closed-form masses m_j and xi_j = 1/m_j");
  int m_L = 4;
  NomeInput m_nome;
  std::string m_format = "json", m_out;
  masses->add_option("--L", m_L, "model label L in {3,4,6}");
  m_nome.attach(masses);
  masses->add_option("--format", m_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  masses->add_option("--out", m_out, "artifact path (default masses.<format>)");

  // amplitudes
  auto* ampl = app.add_subcommand("amplitudes", "universal amplitude combinations");
  std::string a_format = "json", a_out;
  ampl->add_option("--format", a_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  ampl->add_option("--out", a_out, "artifact path (default amplitudes.<format>)");

  // verify
  auto* ver = app.add_subcommand("verify", "identity verification suites");
  std::string v_suite = "all", v_out;
  int v_samples = 10;
  std::uint64_t v_seed = 0;
  ver->add_option("--suite", v_suite, "poch|recurrences|assembly|all")
      ->check(CLI::IsMember({"poch", "recurrences", "assembly", "all"}));
  ver->add_option("--samples", v_samples, "samples per case");
  ver->add_option("--seed", v_seed, "RNG seed (default 0)");
  ver->add_option("--out", v_out, "report path (default verify_report.json)");

  // bethe
  auto* bet = app.add_subcommand("bethe", "finite-N Bethe solve and eigenvalue ratio");
  int b_L = 4, b_N = 6, b_j = 0, b_ell = 0, b_branch = -1;
  NomeInput b_nome;
  std::string b_out;
  bet->add_option("--L", b_L, "model label (4 for excited states)");
  bet->add_option("--N", b_N, "lattice width (even)")->required();
  b_nome.attach(bet);
  bet->add_option("--j", b_j, "excitation index, 0 = ground state");
  bet->add_option("--ell", b_ell, "omega sector (0 = scan automatically)");
  bet->add_option("--branch", b_branch, "limit-polynomial branch (-1 = scan)");
  bet->add_option("--out", b_out, "artifact path (default bethe.json)");

  // scan
  auto* scan = app.add_subcommand("scan", "p-sweep of masses vs the critical asymptote");
  int s_L = 4, s_count = 20;
  double s_pmin = 1e-8, s_pmax = 1e-2;
  std::string s_out;
  scan->add_option("--L", s_L, "model label");
  scan->add_option("--p-min", s_pmin, "lower end of the p grid");
  scan->add_option("--p-max", s_pmax, "upper end of the p grid");
  scan->add_option("--count", s_count, "number of grid points");
  scan->add_option("--out", s_out, "artifact path (default scan.csv)");

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "global RNG seed (verification sampling)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (masses->parsed()) {
      if (m_out.empty()) m_out = "masses." + m_format;
      return cmd_masses(m_L, m_nome, m_format, m_out, tr);
    }
    if (ampl->parsed()) {
      if (a_out.empty()) a_out = "amplitudes." + a_format;
      return cmd_amplitudes(a_format, a_out);
    }
    if (ver->parsed()) {
      if (v_out.empty()) v_out = "verify_report.json";
      return cmd_verify(v_suite, v_samples, v_seed ? v_seed : seed, v_out, tr);
    }
    if (bet->parsed()) {
      if (b_out.empty()) b_out = "bethe.json";
      return cmd_bethe(b_L, b_N, b_nome, b_j, b_ell, b_branch, b_out, tr);
    }
    if (scan->parsed()) {
      if (s_out.empty()) s_out = "scan.csv";
      return cmd_scan(s_L, s_pmin, s_pmax, s_count, s_out, tr);
    }
  } catch (const dilutea::solver_error& e) {
    std::fprintf(stderr, "error: %s (last good x = %g)\n", e.what(), e.last_good_x);
    return 1;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
