// Command-line driver: verification campaigns, locus atlases, function
// tabulation and limit checks, with machine-readable reports.
//
// Exit codes: 0 all checks pass, 1 verification failure, 2 configuration
// error. Numerical trouble inside a check becomes a failed record, never a
// crash. Fixed seed + fixed config => byte-identical output.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ellva/verify.hpp"

using namespace ellva;

namespace {

struct GlobalOpts {
  std::string out;
  std::string format = "json";
  unsigned long long seed = 0x5EED;
  int samples = 16;
  bool serial = false;
  Truncation trunc;

  SuiteOptions suite() const {
    SuiteOptions s;
    s.samples = samples;
    s.seed = seed;
    s.mode = serial ? ExecMode::serial : ExecMode::parallel;
    s.trunc = trunc;
    return s;
  }
};

void add_global_flags(CLI::App* cmd, GlobalOpts& g) {
  cmd->add_option("--out", g.out, "output path (default: stdout, or $ELLVA_OUT_DIR/<cmd>.<ext>)");
  cmd->add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--seed", g.seed, "sampling seed");
  cmd->add_option("--samples", g.samples, "spectral sample count")->check(CLI::PositiveNumber);
  cmd->add_flag("--serial", g.serial, "disable the OpenMP sweep");
  cmd->add_option("--trunc-product", g.trunc.product_order, "product truncation order");
  cmd->add_option("--trunc-series", g.trunc.series_order, "series truncation order");
  cmd->add_option("--tol", g.trunc.target_tol, "certified truncation tolerance");
}

std::string default_path(const std::string& name, const std::string& ext) {
  if (const char* dir = std::getenv("ELLVA_OUT_DIR"))
    return (std::filesystem::path(dir) / (name + "." + ext)).string();
  return {};
}

int emit(const GlobalOpts& g, const std::string& cmd, const std::string& payload,
         const std::string& ext) {
  std::string path = g.out.empty() ? default_path(cmd, ext) : g.out;
  if (path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot write " << path << "\n";
    return 2;
  }
  f << payload;
  std::cerr << "wrote " << path << "\n";
  return 0;
}

int finish_report(const GlobalOpts& g, const std::string& cmd, VerificationReport& rep) {
  rep.config["seed"] = g.seed;
  rep.config["samples"] = g.samples;
  rep.config["mode"] = g.serial ? "serial" : "parallel";
  rep.config["truncation"] = truncation_json(g.trunc);
  const std::string payload =
      g.format == "csv" ? rep.to_csv() : rep.to_json().dump(2) + "\n";
  const int rc = emit(g, cmd, payload, g.format == "csv" ? "csv" : "json");
  if (rc != 0) return rc;
  return rep.verdict() ? 0 : 1;
}

double require_unit_interval(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) {
    std::cerr << what << " outside unit disk\n";
    std::exit(2);
  }
  return v;
}

}  // namespace

// Expand `--config file` into `--key value` tokens for keys the command line
// does not already carry; explicit flags win over the file.
std::vector<std::string> merge_config_file(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream f(path);
  if (!f) {
    std::cerr << "cannot read config file " << path << "\n";
    std::exit(2);
  }
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::cerr << "malformed config line: " << line << "\n";
      std::exit(2);
    }
    const std::string key = "--" + line.substr(0, eq);
    if (std::find(args.begin(), args.end(), key) != args.end()) continue;
    args.push_back(key);
    args.push_back(line.substr(eq + 1));
  }
  return args;
}

int main(int argc, char** argv) {
  CLI::App app{"elliptic R-matrix and structure-function verifier"};
  app.require_subcommand(1);
  app.footer("Any subcommand accepts --config FILE with key=value lines; explicit flags win.");

  GlobalOpts g;

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run the matrix identity suite");
  int v_N = 2;
  double v_q = 0.4, v_p = 0.09, v_c = -2.0;
  verify->add_option("--N", v_N, "tensor rank N")->check(CLI::Range(2, 6));
  verify->add_option("--q", v_q, "deformation parameter q");
  verify->add_option("--p", v_p, "elliptic nome p");
  verify->add_option("--c", v_c, "central charge c");
  add_global_flags(verify, g);

  // ---- atlas ----
  auto* atlas = app.add_subcommand("atlas", "enumerate and verify abelian loci");
  int a_N = 2, a_mmax = 4, a_nmax = 4, a_bound = 12, a_m = 3;
  double a_q = 0.7;
  bool a_localized = false;
  atlas->add_option("--N", a_N, "tensor rank N")->check(CLI::Range(2, 6));
  atlas->add_option("--mmax", a_mmax, "max |m|")->check(CLI::Range(1, 8));
  atlas->add_option("--nmax", a_nmax, "max |n|")->check(CLI::Range(1, 8));
  atlas->add_option("--bound", a_bound, "lambda search bound")->check(CLI::Range(1, 16));
  atlas->add_option("--q", a_q, "real q used for instantiation");
  atlas->add_flag("--localized", a_localized, "localized-center records instead of surface loci");
  atlas->add_option("--m", a_m, "m for --localized (odd, |m| != 1)");
  add_global_flags(atlas, g);

  // ---- tabulate ----
  auto* tab = app.add_subcommand("tabulate", "tabulate a structure function on an x-grid");
  std::string t_fn = "Y";
  int t_m = 2, t_n = -1, t_a = 1, t_k = 1, t_grid = 65, t_N = 2;
  double t_q = 0.4, t_sexp = 1.37, t_p = 0.09, t_rmin = 0.5, t_rmax = 2.0;
  bool t_c_given = false;
  double t_c = 0.0;
  tab->add_option("--fn", t_fn, "Y | tildeY | g1ratio | F | U | g")
      ->check(CLI::IsMember({"Y", "tildeY", "g1ratio", "F", "U", "g"}));
  tab->add_option("--m", t_m);
  tab->add_option("--n", t_n);
  tab->add_option("--a", t_a, "order for --fn F");
  tab->add_option("--k", t_k, "order for --fn g");
  tab->add_option("--N", t_N)->check(CLI::Range(2, 6));
  tab->add_option("--q", t_q);
  tab->add_option("--p", t_p, "nome for F/U/g");
  tab->add_option("--s-exp", t_sexp, "carrier exponent: s = q^sexp (surface functions)");
  tab->add_option("--c", t_c, "central charge; must sit on the surface for Y/tildeY")
      ->each([&](const std::string&) { t_c_given = true; });
  tab->add_option("--grid", t_grid, "row count")->check(CLI::Range(2, 100000));
  tab->add_option("--rmin", t_rmin);
  tab->add_option("--rmax", t_rmax);
  add_global_flags(tab, g);

  // ---- limits ----
  auto* lim = app.add_subcommand("limits", "scaling and Poisson limit checks");
  std::string l_case = "all";
  int l_N = 2, l_m = 0, l_n = 0, l_ell = 0, l_u = 1;
  double l_q = 0.45;
  lim->add_option("--case", l_case, "all | scaling | both_large | n_unit_even | n_unit_odd | "
                                    "n_unit_divisor | m_unit")
      ->check(CLI::IsMember({"all", "scaling", "both_large", "n_unit_even", "n_unit_odd",
                             "n_unit_divisor", "m_unit"}));
  lim->add_option("--N", l_N)->check(CLI::Range(2, 6));
  lim->add_option("--q", l_q);
  lim->add_option("--m", l_m, "custom Poisson case: m (with --case <tag>)");
  lim->add_option("--n", l_n, "custom Poisson case: n");
  lim->add_option("--ell", l_ell, "custom Poisson case: deformation index");
  lim->add_option("--u", l_u, "custom Poisson case: divisor");
  add_global_flags(lim, g);

  try {
    std::vector<std::string> args = merge_config_file(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    g.trunc.validate();

    if (*verify) {
      require_unit_interval(v_q, "q");
      require_unit_interval(v_p, "p");
      const ModelParams mp = ModelParams::from_p(v_N, Complex(v_q, 0.0), Complex(v_p, 0.0), v_c);
      mp.require_nomes_in_disk();
      VerificationReport rep = rmatrix_identity_suite(mp, g.suite());
      rep.config = Json{{"command", "verify"}, {"N", v_N}, {"q", v_q}, {"p", v_p}, {"c", v_c}};
      return finish_report(g, "verify", rep);
    }

    if (*atlas) {
      require_unit_interval(a_q, "q");
      if (a_localized) {
        Json lines = Json::array();
        bool all_ok = true;
        for (long long lambda = 1; lambda < std::abs(a_m); ++lambda) {
          const LocalizedCenterResult res = localized_center_params(a_m, a_N, lambda);
          Json j{{"schema", kReportSchema}, {"m", a_m}, {"lambda", lambda}};
          if (res.locus) {
            const double resid = verify_localized_center(*res.locus, a_q, a_N, g.samples, g.trunc,
                                                         g.seed);
            j["accepted"] = true;
            j["c"] = to_string(res.locus->c);
            j["s_exponent"] = to_string(res.locus->s_exponent);
            j["residual"] = resid;
            all_ok = all_ok && resid < 1e-8;
          } else {
            j["accepted"] = false;
            j["reason"] = res.rejection;
          }
          lines.push_back(std::move(j));
        }
        std::string payload;
        for (const Json& j : lines) payload += j.dump() + "\n";
        const int rc = emit(g, "atlas", payload, "jsonl");
        return rc != 0 ? rc : (all_ok ? 0 : 1);
      }

      const auto records = build_atlas(a_N, a_q, a_mmax, a_nmax, a_bound, g.samples, g.suite());
      std::string payload;
      bool all_ok = true;
      for (const AtlasRecord& r : records) {
        payload += r.to_json().dump() + "\n";
        if (r.instantiable && r.error.empty()) all_ok = all_ok && r.verified;
      }
      const int rc = emit(g, "atlas", payload, "jsonl");
      return rc != 0 ? rc : (all_ok ? 0 : 1);
    }

    if (*tab) {
      require_unit_interval(t_q, "q");
      const Complex qc(t_q, 0.0);

      // Surface functions get their parameters from (q, s-exp) with c solved
      // from the surface; an explicit inconsistent --c is a config error.
      ModelParams mp = ModelParams::from_p(t_N, qc, Complex(t_p, 0.0), t_c_given ? t_c : 0.0);
      const bool on_surface_fn = (t_fn == "Y" || t_fn == "tildeY" || t_fn == "g1ratio");
      SurfaceSpec spec{t_m, t_fn == "Y" ? t_n : -1};
      if (on_surface_fn) {
        const double sigma = t_sexp;
        const double sigma_star = (-t_N - spec.m * sigma) / spec.n;
        const double c_surface = sigma - sigma_star;
        if (t_c_given && std::abs(t_c - c_surface) > 1e-12) {
          std::cerr << "not on surface: --c " << t_c << " vs surface value " << c_surface << "\n";
          return 2;
        }
        mp = ModelParams::from_s(t_N, qc, Complex(std::pow(t_q, sigma), 0.0), c_surface);
      }

      std::string csv = "# fn=" + t_fn + " N=" + std::to_string(t_N) + " q=" + format_double(t_q) +
                        " m=" + std::to_string(t_m) + " n=" + std::to_string(spec.n) +
                        " product_order=" + std::to_string(g.trunc.product_order) +
                        " series_order=" + std::to_string(g.trunc.series_order) + " tol=" +
                        format_double(g.trunc.target_tol) + "\nx,re,im\n";
      for (int i = 0; i < t_grid; ++i) {
        double x = std::exp(std::log(t_rmin) +
                            (std::log(t_rmax) - std::log(t_rmin)) * i / (t_grid - 1.0));
        // Snap the nearest grid point to the symmetric point x = 1.
        if (std::abs(std::log(x)) <=
            0.5 * (std::log(t_rmax) - std::log(t_rmin)) / (t_grid - 1.0))
          x = 1.0;
        Complex v;
        try {
          if (t_fn == "Y") v = calY(spec, Complex(x, 0.0), mp, g.trunc);
          else if (t_fn == "tildeY") v = tildeY(t_m, Complex(x, 0.0), false, mp, g.trunc);
          else if (t_fn == "g1ratio") {
            const Complex x2(x * x, 0.0);
            if (std::abs(x - 1.0 / x) < 1e-12) v = Complex(1.0, 0.0);
            else
              v = g_k(1, 1.0 / x2, false, mp, g.trunc, GkForm::product) /
                  g_k(1, x2, false, mp, g.trunc, GkForm::product);
          } else if (t_fn == "F") v = calF(t_a, Complex(x, 0.0), false, mp, g.trunc);
          else if (t_fn == "U") v = scalar_U(mp, Complex(x, 0.0), g.trunc);
          else v = g_k(t_k, Complex(x, 0.0), false, mp, g.trunc, GkForm::product);
        } catch (const Error& e) {
          csv += format_double(x) + ",nan,nan\n";
          continue;
        }
        csv += format_double(x) + "," + format_double(v.real()) + "," +
               format_double(v.imag()) + "\n";
      }
      return emit(g, "tabulate", csv, "csv");
    }

    if (*lim) {
      require_unit_interval(l_q, "q");
      VerificationReport rep;
      const bool custom = l_m != 0 && l_case != "all" && l_case != "scaling";
      if (custom) {
        // One user-specified deformation direction, verified on the spot.
        PoissonCase pc;
        if (l_case == "both_large") pc.tag = PoissonCaseTag::both_large;
        else if (l_case == "n_unit_even") pc.tag = PoissonCaseTag::n_unit_even;
        else if (l_case == "n_unit_odd") pc.tag = PoissonCaseTag::n_unit_odd;
        else if (l_case == "n_unit_divisor") pc.tag = PoissonCaseTag::n_unit_divisor;
        else pc.tag = PoissonCaseTag::m_unit;
        pc.m = l_m;
        pc.n = l_n != 0 ? l_n
                        : (pc.tag == PoissonCaseTag::m_unit ? 3 : (l_m > 0 ? 1 : -1));
        pc.ell = l_ell != 0 ? l_ell : (pc.tag == PoissonCaseTag::n_unit_odd ? 1 : 2);
        pc.u = l_u;
        pc.validate(l_N);
        rep.merge(verify_poisson_case(pc, l_N, l_q, g.suite()));
      } else {
        if (l_case == "all" || l_case == "scaling") rep.merge(scaling_suite(g.suite()));
        if (l_case != "scaling") {
          VerificationReport pr = poisson_suite(l_N, l_q, g.suite());
          if (l_case != "all") {
            VerificationReport filtered;
            for (const CheckRecord& r : pr.records)
              if (r.name.find(l_case) != std::string::npos) filtered.add(r);
            pr = filtered;
          }
          rep.merge(pr);
        }
      }
      rep.config = Json{{"command", "limits"}, {"case", l_case}, {"N", l_N}, {"q", l_q}};
      return finish_report(g, "limits", rep);
    }
  } catch (const Error& e) {
    const bool config_error = e.kind() == ErrorKind::InvalidConfig ||
                              e.kind() == ErrorKind::NomeOutOfDisk ||
                              e.kind() == ErrorKind::WrongRank;
    std::cerr << e.what() << "\n";
    return config_error ? 2 : 1;
  }
  return 2;
}
