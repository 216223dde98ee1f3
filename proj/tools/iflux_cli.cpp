// Command-line front end: single solves, refinement studies and the full set
// of reference tables.
#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "iflux/augmented.hpp"
#include "iflux/error.hpp"
#include "iflux/flux1d.hpp"
#include "iflux/ifem1d.hpp"
#include "iflux/norms.hpp"
#include "iflux/study.hpp"
#include "iflux/tube.hpp"

namespace {

struct Options {
  std::string problem;
  std::optional<double> alpha;
  std::optional<double> beta_minus;
  std::optional<double> beta_plus;
  double q = 0.0;
  std::optional<double> r_gamma;
  double eps_mult = 3.0;
  bool whole_tube = false;
  bool exact_geometry = false;
  std::vector<int> n_list;
  int n = 0;
  std::string method = "sparse-qr";
  std::string format = "markdown";
  std::string out;
  bool fine = false;
  bool no_standard = false;
};

iflux::RunConfig to_config(const Options& o, int dimension) {
  iflux::RunConfig c;
  c.problem = o.problem;
  iflux::ProblemParams& p = c.params;
  if (o.problem == "paper-1d") {
    p.beta_minus = 2.0;
    p.beta_plus = 10.0;
  } else if (o.problem == "trig-2d") {
    p.beta_minus = 100.0;
    p.beta_plus = 1.0;
  } else {
    p.beta_minus = 1.0;
    p.beta_plus = 1000.0;
  }
  p.alpha = o.alpha.value_or(1.0 / 3.0);
  p.beta_minus = o.beta_minus.value_or(p.beta_minus);
  p.beta_plus = o.beta_plus.value_or(p.beta_plus);
  p.q = o.q;
  p.r_gamma = o.r_gamma.value_or(o.problem == "r2r4-2d" ? 1.0 : 0.9);
  c.eps_mult = o.eps_mult;
  c.whole_tube = o.whole_tube;
  c.geometry = o.exact_geometry ? iflux::GeometryMode::Exact : iflux::GeometryMode::Polyline;
  c.method = iflux::parse_lsq_method(o.method);
  c.n_list = o.n_list.empty() ? iflux::default_n_list(dimension, o.fine) : o.n_list;
  c.with_standard = !o.no_standard;
  if (iflux::problem_dimension(o.problem) != dimension) {
    throw iflux::ParameterError("problem '" + o.problem + "' does not match this subcommand's dimension");
  }
  return c;
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) throw iflux::IoError("cannot open '" + path + "' for writing");
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  if (std::fclose(f) != 0 || !ok) throw iflux::IoError("failed while writing '" + path + "'");
}

void add_common(CLI::App* cmd, Options& o, int dimension) {
  cmd->add_option("--problem", o.problem, "problem id")
      ->check(dimension == 1 ? CLI::IsMember({"paper-1d"}) : CLI::IsMember({"trig-2d", "r2r4-2d"}));
  cmd->add_option("--beta-minus", o.beta_minus, "coefficient on the inner/left side");
  cmd->add_option("--beta-plus", o.beta_plus, "coefficient on the outer/right side");
  cmd->add_option("--q", o.q, "constant reaction coefficient")->check(CLI::NonNegativeNumber);
  if (dimension == 1) {
    cmd->add_option("--alpha", o.alpha, "interface point in (0,1)");
  } else {
    cmd->add_option("--r-gamma", o.r_gamma, "interface circle radius (0: no interface, whole-domain tube)");
    cmd->add_option("--eps-mult", o.eps_mult, "tube half-width in units of h")->check(CLI::PositiveNumber);
    cmd->add_flag("--whole-tube", o.whole_tube, "augment over the whole domain");
    cmd->add_flag("--exact-geometry", o.exact_geometry, "integrate over the true circular regions instead of the chord split");
    cmd->add_option("--method", o.method, "least-squares solver")
        ->check(CLI::IsMember({"svd", "sparse-qr", "normal-cg"}));
  }
}

int run_solve1d(const Options& o) {
  iflux::RunConfig c = to_config(o, 1);
  const iflux::Problem1d problem = iflux::make_problem_1d(c.problem, c.params);
  const iflux::Grid1d grid = iflux::Grid1d::uniform(o.n, problem.alpha);
  const iflux::Solution1d sol = iflux::solve(problem, grid);
  const iflux::FluxReport1d f = iflux::flux_report(sol, problem);
  const iflux::ErrorReport1d e = iflux::error_norms_1d(sol, problem);
  std::ostringstream out;
  out.precision(10);
  out << "N = " << o.n << ", h = " << grid.h << ", interface element j = " << grid.j << "\n"
      << "gamma_minus = " << f.gamma_minus << "  (exact " << problem.coeff.beta_minus * problem.du(problem.alpha, iflux::Side::Minus) << ")\n"
      << "gamma_plus  = " << f.gamma_plus << "  (exact " << -problem.coeff.beta_plus * problem.du(problem.alpha, iflux::Side::Plus) << ")\n"
      << "gamma_0     = " << f.gamma_0 << "  (exact " << -problem.coeff.beta_minus * problem.du(0.0, iflux::Side::Minus) << ")\n"
      << "gamma_1     = " << f.gamma_1 << "  (exact " << problem.coeff.beta_plus * problem.du(1.0, iflux::Side::Plus) << ")\n"
      << "ux_minus    = " << f.ux_minus << "\n"
      << "ux_plus     = " << f.ux_plus << "\n"
      << "error linf = " << e.linf << ", linf_nodal = " << e.linf_nodal << ", l2 = " << e.l2
      << ", h1_semi = " << e.h1_semi << "\n";
  write_text(out.str(), o.out);
  return 0;
}

int run_solve2d(const Options& o) {
  iflux::RunConfig c = to_config(o, 2);
  const iflux::Problem2d problem = iflux::make_problem_2d(c.problem, c.params);
  const iflux::TriMesh mesh = iflux::build_mesh(problem.domain, o.n);
  const double eps = c.whole_tube ? std::numeric_limits<double>::infinity() : c.eps_mult * mesh.h;
  const iflux::TubeRegion tube = iflux::extract_tube(mesh, problem.circle, eps);
  const iflux::AugmentedSystem2d sys =
      iflux::assemble_augmented(problem, iflux::discretize(problem, mesh, &tube, c.geometry));
  const iflux::ErrorReport2d e = iflux::error_norms_2d(iflux::solve_augmented(sys, c.method), problem);
  const iflux::ErrorReport2d s =
      iflux::error_norms_2d(iflux::solve_standard_fem(iflux::assemble_standard(problem, mesh, c.geometry)), problem);
  std::ostringstream out;
  out.precision(6);
  out << "N = " << o.n << ", h = " << mesh.h << ", tube elements = " << tube.size() << ", system "
      << sys.matrix.n_rows() << " x " << sys.matrix.n_cols() << " (galerkin " << sys.galerkin_rows << ", flux "
      << sys.flux_rows << ", divergence " << sys.divergence_rows << ", jump " << sys.jump_rows << ")\n"
      << "augmented: l2 = " << e.l2 << ", h1_semi = " << e.h1_semi << ", linf_nodal = " << e.linf_nodal
      << ", interface flux = " << e.flux_l2 << " (minus " << e.flux_l2_minus << ", plus " << e.flux_l2_plus
      << "), tube flux = " << e.tube_v_l2 << "\n"
      << "standard:  l2 = " << s.l2 << ", h1_semi = " << s.h1_semi << ", interface flux = " << s.std_flux_l2 << "\n";
  write_text(out.str(), o.out);
  return 0;
}

int run_study(const Options& o, int dimension) {
  const iflux::ConvergenceTable t =
      dimension == 1 ? iflux::run_study_1d(to_config(o, 1)) : iflux::run_study_2d(to_config(o, 2));
  write_text(iflux::format_table(t, iflux::parse_table_format(o.format)), o.out);
  if (t.failure) {
    std::cerr << "study stopped at N=" << t.failure->n << ": " << t.failure->message << "\n";
    return 2;
  }
  return 0;
}

struct TableSpec {
  std::string file;
  Options opts;
};

int run_tables(const Options& base) {
  namespace fs = std::filesystem;
  const fs::path dir = base.out.empty() ? fs::path("tables") : fs::path(base.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw iflux::IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const std::string ext = base.format == "csv" ? ".csv" : ".md";

  auto with = [&](std::string problem) {
    Options o;
    o.problem = std::move(problem);
    o.method = base.method;
    o.format = base.format;
    o.fine = base.fine;
    return o;
  };
  std::vector<TableSpec> specs;
  specs.push_back({"model1d", with("paper-1d")});
  {
    TableSpec s{"trig_q0", with("trig-2d")};
    specs.push_back(s);
  }
  for (double r : {0.99, 0.0}) {
    TableSpec s{r == 0.0 ? "trig_r0" : "trig_r099", with("trig-2d")};
    s.opts.r_gamma = r;
    specs.push_back(s);
  }
  {
    TableSpec s{"trig_q1", with("trig-2d")};
    s.opts.q = 1.0;
    specs.push_back(s);
  }
  for (auto [bm, bp, tag] : {std::tuple{1.0, 1000.0, "1_1000"}, std::tuple{1000.0, 1.0, "1000_1"}}) {
    TableSpec s{std::string("r2r4_") + tag, with("r2r4-2d")};
    s.opts.beta_minus = bm;
    s.opts.beta_plus = bp;
    specs.push_back(s);
  }
  for (double eps : {10.0, 0.0}) {
    TableSpec s{eps == 0.0 ? "trig_whole_tube" : "trig_eps10h", with("trig-2d")};
    if (eps == 0.0) {
      s.opts.whole_tube = true;
    } else {
      s.opts.eps_mult = eps;
    }
    specs.push_back(s);
  }

  std::ostringstream summary;
  summary << "| table | quantity | average order |\n| --- | --- | --- |\n";
  int status = 0;
  for (const auto& spec : specs) {
    const int dim = iflux::problem_dimension(spec.opts.problem);
    const iflux::ConvergenceTable t =
        dim == 1 ? iflux::run_study_1d(to_config(spec.opts, 1)) : iflux::run_study_2d(to_config(spec.opts, 2));
    iflux::emit(t, iflux::parse_table_format(base.format), (dir / (spec.file + ext)).string());
    const std::vector<std::string> keys =
        dim == 1 ? std::vector<std::string>{"linf_u", "ux_minus"}
                 : std::vector<std::string>{"l2_u", "flux_gamma", "v_tube", "std_h1_u"};
    for (const auto& k : keys) {
      const double avg = t.orders(k).average;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", avg);
      summary << "| " << spec.file << " | " << k << " | " << (std::isnan(avg) ? "n/a" : buf) << " |\n";
    }
    std::cout << "wrote " << (dir / (spec.file + ext)).string() << "\n";
    if (t.failure) {
      std::cerr << spec.file << ": stopped at N=" << t.failure->n << ": " << t.failure->message << "\n";
      status = 2;
    }
  }
  write_text(summary.str(), (dir / "summary.md").string());
  std::cout << "wrote " << (dir / "summary.md").string() << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interface flux recovery: immersed FEM in 1D, augmented least-squares FEM in 2D"};
  app.set_config("--config", "", "INI file with one section per subcommand; command-line flags win");
  app.require_subcommand(1);

  Options o1;
  o1.problem = "paper-1d";
  auto* solve1d = app.add_subcommand("solve1d", "solve the 1D problem on one grid and report the flux functionals");
  add_common(solve1d, o1, 1);
  solve1d->add_option("--n", o1.n, "number of elements")->required()->check(CLI::Range(2, 1 << 24));
  solve1d->add_option("--out", o1.out, "output file (default stdout)");

  Options s1 = o1;
  auto* study1d = app.add_subcommand("study1d", "1D grid refinement study");
  add_common(study1d, s1, 1);
  study1d->add_option("--n-list", s1.n_list, "strictly increasing element counts")->delimiter(',');
  study1d->add_option("--out", s1.out, "output file (default stdout)");
  study1d->add_option("--format", s1.format, "table format")->check(CLI::IsMember({"csv", "markdown"}));

  Options o2;
  o2.problem = "trig-2d";
  auto* solve2d = app.add_subcommand("solve2d", "solve a 2D problem on one mesh, augmented and standard");
  add_common(solve2d, o2, 2);
  solve2d->add_option("--n", o2.n, "mesh lines per direction")->required()->check(CLI::Range(4, 1 << 14));
  solve2d->add_option("--out", o2.out, "output file (default stdout)");

  Options s2 = o2;
  auto* study2d = app.add_subcommand("study2d", "2D grid refinement study");
  add_common(study2d, s2, 2);
  study2d->add_option("--n-list", s2.n_list, "strictly increasing mesh sizes")->delimiter(',');
  study2d->add_flag("--fine", s2.fine, "extend the default list with N = 256 and 512");
  study2d->add_flag("--no-standard", s2.no_standard, "skip the standard FEM baseline columns");
  study2d->add_option("--out", s2.out, "output file (default stdout)");
  study2d->add_option("--format", s2.format, "table format")->check(CLI::IsMember({"csv", "markdown"}));

  Options tb;
  auto* tables = app.add_subcommand("tables", "regenerate every reference table into a directory");
  tables->add_option("--out", tb.out, "output directory (default ./tables)");
  tables->add_option("--format", tb.format, "table format")->check(CLI::IsMember({"csv", "markdown"}));
  tables->add_option("--method", tb.method, "least-squares solver")
      ->check(CLI::IsMember({"svd", "sparse-qr", "normal-cg"}));
  tables->add_flag("--fine", tb.fine, "extend 2D studies to N = 256 and 512");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*solve1d) return run_solve1d(o1);
    if (*study1d) return run_study(s1, 1);
    if (*solve2d) return run_solve2d(o2);
    if (*study2d) return run_study(s2, 2);
    if (*tables) return run_tables(tb);
  } catch (const iflux::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
