#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dptk/cutoff.hpp"
#include "dptk/dpgrid_io.hpp"
#include "dptk/error.hpp"
#include "dptk/exponents.hpp"
#include "dptk/gehring.hpp"
#include "dptk/harness.hpp"
#include "dptk/maximal.hpp"
#include "dptk/meanpoly.hpp"
#include "dptk/parallel.hpp"
#include "dptk/potentials.hpp"
#include "dptk/report.hpp"
#include "dptk/suites.hpp"
#include "dptk/truncation.hpp"
#include "dptk/weights.hpp"
#include "dptk/whitney.hpp"

namespace fs = std::filesystem;
using namespace dptk;

namespace {

struct Globals {
  std::string seed = "0x5EED";
  int grid_size = 0;
  std::string output_dir;
  int threads = 0;
  bool timing = false;
};

std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used, 0);
    if (used != s.size()) throw InputError("");
    return v;
  } catch (const std::exception&) {
    throw InputError("seed must be an integer (decimal or 0x hex), got '" + s + "'");
  }
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError(std::string("cannot parse ") + what + " '" + s + "'");
    }
  }
  return out;
}

Point to_point(const std::vector<double>& v, std::size_t n, const char* what) {
  if (v.size() != n) throw InputError(std::string(what) + " needs " + std::to_string(n) + " coordinates");
  Point p{};
  for (std::size_t k = 0; k < n; ++k) p[k] = v[k];
  return p;
}

// "cx,cy,r" -> ball in dimension n.
Region parse_ball(std::string s, int n) {
  if (s.rfind("ball:", 0) == 0) s = s.substr(5);
  auto v = parse_list(s, "ball");
  if (v.size() != static_cast<std::size_t>(n) + 1) throw InputError("ball needs n coordinates and a radius");
  const double r = v.back();
  v.pop_back();
  if (!(r > 0.0)) throw InputError("ball radius must be positive");
  return Region::ball(to_point(v, n, "ball center"), r);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

// Prints the document, mirrors it into --output-dir, and returns the exit code.
int emit(const Globals& g, const std::string& name, const std::string& doc, bool pass) {
  if (!g.output_dir.empty()) {
    fs::create_directories(g.output_dir);
    write_text(fs::path(g.output_dir) / (name + ".json"), doc);
  }
  std::cout << doc;
  return pass ? 0 : 1;
}

int emit(const Globals& g, Report r) {
  const bool pass = r.passed();
  return emit(g, r.suite, report_json(r), pass);
}

GridFunction load(const std::string& path) { return read_grid(path); }

std::vector<std::uint8_t> mask_of(const GridFunction& f) {
  std::vector<std::uint8_t> m(f.points());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = f(i) > 0.5 ? 1 : 0;
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-phase verification toolkit"};
  // Global options may also follow the subcommand.
  app.fallthrough();
  app.require_subcommand(1);
  Globals glob;
  app.add_option("--seed", glob.seed, "Corpus seed (decimal or 0x hex)");
  app.add_option("--grid-size", glob.grid_size, "Cells per axis at n = 2 for suites");
  app.add_option("--output-dir", glob.output_dir, "Also write reports here");
  app.add_option("--threads", glob.threads, "Worker threads (0 = hardware)");
  app.add_flag("--timing", glob.timing, "Add timing_ms to suite reports");

  // exponents
  std::string cfg_path;
  auto* exp = app.add_subcommand("exponents", "Derive the exponent chain for a configuration");
  exp->add_option("--config", cfg_path, "Exponent configuration (JSON)")->required();

  // regularize
  std::string input, output;
  double alpha = 0.5;
  auto* reg = app.add_subcommand("regularize", "Regularize a weight and report seminorms");
  reg->add_option("--input", input)->required();
  reg->add_option("--alpha", alpha)->required();
  reg->add_option("--output", output)->required();

  // maximal
  double beta = 0.0;
  std::string mode = "uncentered", restrict_ball;
  int iterate = 1;
  auto* mx = app.add_subcommand("maximal", "Fractional maximal function");
  mx->add_option("--input", input)->required();
  mx->add_option("--beta", beta);
  mx->add_option("--mode", mode)->check(CLI::IsMember({"centered", "uncentered"}));
  mx->add_option("--restrict", restrict_ball, "ball:cx,cy,r");
  mx->add_option("--iterate", iterate);
  mx->add_option("--output", output)->required();

  // riesz
  double gamma = 1.0;
  std::string ball_s;
  auto* rz = app.add_subcommand("riesz", "Riesz potential over a ball");
  rz->add_option("--input", input)->required();
  rz->add_option("--gamma", gamma)->required();
  rz->add_option("--ball", ball_s, "cx,cy,r")->required();
  rz->add_option("--output", output)->required();

  // polyfit
  std::string weight_path, center_s;
  int order = 1;
  auto* pf = app.add_subcommand("polyfit", "Weighted mean-value polynomial");
  pf->add_option("--input", input)->required();
  pf->add_option("--ball", ball_s)->required();
  pf->add_option("--weight", weight_path, "eta grid; default is the radial cutoff 1 on B/2");
  pf->add_option("--order", order)->required();
  pf->add_option("--center", center_s, "expansion point; default is the ball center");

  // whitney
  std::string mask_path;
  double max_radius = 0.25;
  bool verify_flag = false;
  auto* wh = app.add_subcommand("whitney", "Whitney cover of a mask");
  wh->add_option("--mask", mask_path)->required();
  wh->add_option("--output", output)->required();
  wh->add_option("--max-radius", max_radius);
  wh->add_flag("--verify", verify_flag, "Print the cover report");

  // truncate
  std::string u_path, a_path, report_path;
  double lambda_mult = 1.5, radius = 0.25;
  std::string trunc_center;
  auto* tr = app.add_subcommand("truncate", "Truncation at lambda = mult * Lambda0");
  tr->add_option("--u", u_path)->required();
  tr->add_option("--a", a_path)->required();
  tr->add_option("--config", cfg_path)->required();
  tr->add_option("--lambda-mult", lambda_mult);
  tr->add_option("--radius", radius);
  tr->add_option("--center", trunc_center);
  tr->add_option("--output", output)->required();
  tr->add_option("--report", report_path);

  // gehring
  int gn = 2;
  double gA = 1.0, kappa = 0.5, eps0 = 0.5, theta_rh = 0.0, eps = 0.0, R0 = 0.25;
  int stride = 8;
  std::string f1_path, f2_path, omega_s;
  auto* ge = app.add_subcommand("gehring", "Gehring certificate or scan");
  ge->add_option("--n", gn);
  ge->add_option("--A", gA);
  ge->add_option("--kappa", kappa);
  ge->add_option("--eps0", eps0);
  ge->add_option("--theta", theta_rh, "reverse-Hoelder tail coefficient");
  ge->add_flag("--verify", verify_flag);
  ge->add_option("--f1", f1_path);
  ge->add_option("--f2", f2_path);
  ge->add_option("--eps", eps, "default: eps_max");
  ge->add_option("--omega", omega_s, "ball:cx,cy,r; default is the grid box");
  ge->add_option("--R0", R0);
  ge->add_option("--stride", stride);

  // residual
  std::string phi_path;
  auto* rs = app.add_subcommand("residual", "Weak-form residual of the model system");
  rs->add_option("--u", u_path)->required();
  rs->add_option("--a", a_path)->required();
  rs->add_option("--config", cfg_path)->required();
  rs->add_option("--phi", phi_path)->required();

  // verify
  std::string suite;
  auto* ve = app.add_subcommand("verify", "Run a verification suite");
  ve->add_option("--suite", suite)->required();
  ve->add_option("--config", cfg_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (glob.threads < 0) throw InputError("--threads must be >= 0");
    if (glob.threads > 0) set_thread_count(glob.threads);
    const std::uint64_t seed = parse_seed(glob.seed);

    if (*exp) {
      const auto cfg = load_exponent_config(cfg_path);
      const auto d = derive_exponents(cfg);
      const auto doc = derived_exponents_json(cfg, d);
      return emit(glob, "exponents", doc, all_pass(validate_derived(cfg, d)));
    }
    if (*reg) {
      const auto a = load(input);
      Report r;
      r.suite = "regularize";
      r.echo("alpha", alpha);
      const Region all = Region::whole(a.geometry());
      const auto before = estimate_seminorm(a, alpha, all);
      const auto out = regularize(a, alpha);
      const auto after = estimate_seminorm(out, alpha, all);
      r.constant("seminorm_input", before.levels);
      r.constant("seminorm_output", after.levels);
      r.checks.push_back({"output_not_diverging", !after.diverging, after.value, 2.0 * after.levels.back(), 0.0});
      write_dpgrid(out, fs::path(output));
      return emit(glob, r);
    }
    if (*mx) {
      const auto f = load(input);
      MaximalSpec spec{beta, mode == "centered" ? MaximalMode::centered : MaximalMode::uncentered, std::nullopt,
                       iterate};
      if (!restrict_ball.empty()) spec.restriction = parse_ball(restrict_ball, f.dim());
      const auto m = maximal_function(f, spec);
      write_dpgrid(m, fs::path(output));
      Report r;
      r.suite = "maximal";
      r.echo("beta", beta);
      r.echo("mode", mode);
      r.echo("iterate", double(iterate));
      r.constant("max", max_value(m));
      return emit(glob, r);
    }
    if (*rz) {
      const auto f = load(input);
      const auto b = parse_ball(ball_s, f.dim());
      const auto out = riesz_potential(f, gamma, b);
      write_dpgrid(out, fs::path(output));
      Report r;
      r.suite = "riesz";
      r.echo("gamma", gamma);
      r.constant("max", max_value(out));
      return emit(glob, r);
    }
    if (*pf) {
      const auto u = load(input);
      const auto b = parse_ball(ball_s, u.dim());
      const auto eta = weight_path.empty() ? sample_cutoff(u.geometry(), b.center(), 0.5 * b.radius(), b.radius())
                                           : load(weight_path);
      const Point c = center_s.empty() ? b.center() : to_point(parse_list(center_s, "center"), u.dim(), "center");
      const auto p = fit(u, b, eta, order, c);
      return emit(glob, "polyfit", polynomial_json(p), moment_residual(u, p, b, eta) <= 1e-8);
    }
    if (*wh) {
      const auto m = load(mask_path);
      const auto mask = mask_of(m);
      const auto c = cover(m.geometry(), mask, max_radius);
      write_text(output, cover_json(c));
      if (!verify_flag) return 0;
      Report r;
      r.suite = "whitney";
      r.echo("max_radius", max_radius);
      const auto cr = verify_cover(c, m.geometry(), mask);
      r.add(cr.checks);
      r.constant("balls", double(c.balls.size()));
      r.constant("max_neighbors", double(cr.max_neighbors));
      r.constant("overlap_ratio", cr.overlap_ratio);
      return emit(glob, r);
    }
    if (*tr) {
      const auto u = load(u_path);
      const auto a = load(a_path);
      const auto cfg = load_exponent_config(cfg_path);
      const auto d = derive_exponents(cfg);
      TruncationConfig t;
      t.R = radius;
      if (!trunc_center.empty()) t.center = to_point(parse_list(trunc_center, "center"), u.dim(), "center");
      if (!(lambda_mult > 1.0)) throw InputError("--lambda-mult must exceed 1");
      const auto fields = assemble_fields(u, a, cfg, d, outer_cutoff(u.geometry(), t));
      const double delta = resolved_delta(t, d);
      const double lambda0 = lambda_floor(fields.G, delta, t.center, t.R);
      const auto res = truncate(u, cfg, t, fields.G, lambda_mult * lambda0);
      write_dpgrid(res.v_lambda, fs::path(output));
      Report r;
      r.suite = "truncate";
      r.echo("lambda_mult", lambda_mult);
      r.echo("R", t.R);
      r.add(res.checks);
      r.constant("delta", delta);
      r.constant("Lambda0", lambda0);
      r.constant("lambda", res.lambda);
      r.constant("balls", double(res.cover.balls.size()));
      r.constant("oscillation", oscillation_report(res, cfg));
      const auto camp = admissibility_report(res, cfg);
      r.constant("campanato_ratio", camp.ratio);
      r.constant("transfer_ratio", polynomial_transfer_report(res).max_ratio);
      const auto doc = report_json(r);
      if (!report_path.empty()) write_text(report_path, doc);
      return emit(glob, "truncate", doc, r.passed());
    }
    if (*ge) {
      const auto cert = gehring_constants(gn, gA, kappa, eps0, theta_rh);
      Report r;
      r.suite = verify_flag ? "gehring_verify" : "gehring_certificate";
      r.echo("n", double(gn));
      r.echo("A", gA);
      r.echo("kappa", kappa);
      r.echo("eps0", eps0);
      r.echo("theta_rh", theta_rh);
      r.add(cert.checks, "certificate");
      r.constant("d", cert.d);
      r.constant("theta", cert.theta);
      r.constant("c1", cert.c1);
      r.constant("c2", cert.c2);
      r.constant("c_star", cert.c_star);
      r.constant("eps_max", cert.eps_max);
      if (verify_flag) {
        if (f1_path.empty()) throw InputError("--verify needs --f1");
        const auto f1 = load(f1_path);
        const auto f2 = f2_path.empty() ? GridFunction(f1.geometry()) : load(f2_path);
        if (f1.dim() != gn) throw InputError("--n does not match the grid dimension");
        const auto& g = f1.geometry();
        const Region omega = omega_s.empty() ? Region::box(g.lower(), g.upper()) : parse_ball(omega_s, gn);
        GehringScanConfig sc;
        sc.R0 = R0;
        sc.stride = stride;
        const double e = eps > 0.0 ? eps : cert.eps_max;
        const auto scan = gehring_verify(f1, f2, cert, omega, e, sc);
        r.echo("eps", e);
        r.constant("pairs", double(scan.balls.size()));
        r.constant("measured_A", scan.measured_A);
        r.constant("premise_fraction", scan.premise_fraction);
        r.constant("conclusion_ratio", scan.conclusion_ratio);
        r.constant("outside_certificate", scan.outside_certificate ? "yes" : "no");
        r.checks.push_back({"premise_fraction", scan.premise_fraction == 1.0, scan.premise_fraction, 1.0, 0.0});
        r.checks.push_back(at_most("conclusion_failures", double(scan.conclusion_failures), 0.0));
      }
      return emit(glob, r);
    }
    if (*rs) {
      const auto u = load(u_path);
      const auto a = load(a_path);
      const auto phi = load(phi_path);
      const auto cfg = load_exponent_config(cfg_path);
      Report r;
      r.suite = "residual";
      r.constant("residual", model_residual(u, a, cfg.p, cfg.q, cfg.m, phi));
      return emit(glob, r);
    }
    if (*ve) {
      SuiteOptions so;
      so.seed = seed;
      so.grid_size = glob.grid_size;
      so.timing = glob.timing;
      if (!cfg_path.empty()) so.config = parse_exponent_config(slurp(cfg_path));
      const auto reports = run_suite(suite, so);
      bool pass = true;
      for (const auto& r : reports) pass = pass && r.passed();
      return emit(glob, suite, report_json(reports), pass);
    }
  } catch (const InputError& e) {
    std::cerr << "dptool: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dptool: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
