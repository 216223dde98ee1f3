#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "iflux/augmented.hpp"
#include "iflux/error.hpp"
#include "iflux/ifem1d.hpp"
#include "iflux/norms.hpp"
#include "iflux/study.hpp"
#include "iflux/tube.hpp"

using iflux::OrderStatus;
using iflux::Side;
using iflux::Vec2;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(s);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(' ');
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(' ') - a + 1);
}

iflux::ConvergenceTable small_table() {
  iflux::ConvergenceTable t;
  t.title = "synthetic";
  t.quantities = {"a", "b"};
  t.n = {8, 16};
  t.errors = {{4e-2, 1.0}, {1e-2, 0.0}};
  t.under_resolved = {false};
  return t;
}

iflux::RunConfig small_2d_config() {
  iflux::RunConfig c;
  c.problem = "trig-2d";
  c.params.beta_minus = 100.0;
  c.params.beta_plus = 1.0;
  c.n_list = {8, 16};
  return c;
}

}  // namespace

TEST(Orders, Examples) {
  auto e = iflux::estimate_orders({8, 16}, {4e-2, 1e-2});
  ASSERT_EQ(e.orders.size(), 1u);
  EXPECT_DOUBLE_EQ(e.orders[0].value, 2.0);
  EXPECT_EQ(e.orders[0].status, OrderStatus::Ok);
  e = iflux::estimate_orders({512, 1024}, {6.088e-8, 8.900e-9});
  EXPECT_NEAR(e.average, 2.774, 5e-4);
  e = iflux::estimate_orders({8, 16, 32}, {0.3, 0.3, 0.3});
  EXPECT_DOUBLE_EQ(e.average, 0.0);
  EXPECT_THROW(iflux::estimate_orders({8, 16}, {1.0}), iflux::DimensionError);
}

TEST(Orders, SyntheticRatesRecovered) {
  const std::vector<int> n = {16, 32, 64, 128, 256, 512, 1024};
  for (double p : {0.5, 1.0, 1.5, 2.0}) {
    std::vector<double> e;
    for (int k : n) e.push_back(3.7 * std::pow(k, -p));
    const auto est = iflux::estimate_orders(n, e);
    EXPECT_EQ(est.used, 6);
    for (const auto& o : est.orders) EXPECT_NEAR(o.value, p, 1e-12);
    EXPECT_NEAR(est.average, p, 1e-12);
  }
}

TEST(Orders, DegenerateAndUnderResolvedTransitions) {
  const auto est = iflux::estimate_orders({8, 16, 32, 64}, {1e-1, 2.5e-2, 0.0, 1e-3}, {true, false, false});
  EXPECT_EQ(est.orders[0].status, OrderStatus::UnderResolved);
  EXPECT_DOUBLE_EQ(est.orders[0].value, 2.0);
  EXPECT_EQ(est.orders[1].status, OrderStatus::Degenerate);
  EXPECT_EQ(est.orders[2].status, OrderStatus::Degenerate);
  EXPECT_EQ(est.used, 0);
  EXPECT_TRUE(std::isnan(est.average));
}

TEST(NList, Validation) {
  EXPECT_THROW(iflux::validate_n_list({}), iflux::ParameterError);
  EXPECT_THROW(iflux::validate_n_list({16, 8}), iflux::ParameterError);
  EXPECT_NO_THROW(iflux::validate_n_list({8, 16, 32}));
  EXPECT_EQ(iflux::default_n_list(1), (std::vector<int>{16, 32, 64, 128, 256, 512, 1024}));
  EXPECT_EQ(iflux::default_n_list(2).back(), 128);
  EXPECT_EQ(iflux::default_n_list(2, true).back(), 512);
}

TEST(Format, CsvLayout) {
  const std::string csv = iflux::format_table(small_table(), iflux::TableFormat::Csv);
  const auto lines = split(csv, '\n');
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "N,a_err[abs],a_order[-],b_err[abs],b_order[-]");
  EXPECT_EQ(lines[1], "8,4.000E-02,,1.000E+00,");
  EXPECT_EQ(lines[2], "16,1.000E-02,2.000,0.000E+00,degenerate");
}

TEST(Format, EmptyTableRejected) {
  iflux::ConvergenceTable t;
  t.quantities = {"a"};
  EXPECT_THROW(iflux::format_table(t, iflux::TableFormat::Csv), iflux::ParameterError);
  EXPECT_THROW(iflux::parse_table_format("json"), iflux::ParameterError);
}

TEST(Format, MarkdownAndCsvCarryTheSameCells) {
  iflux::RunConfig c;
  c.n_list = {16, 32, 64};
  const auto table = iflux::run_study(c);
  const auto csv = split(iflux::format_table(table, iflux::TableFormat::Csv), '\n');
  std::vector<std::vector<std::string>> md_rows;
  for (const auto& line : split(iflux::format_table(table, iflux::TableFormat::Markdown), '\n')) {
    if (line.size() < 2 || line[0] != '|' || line.find("---") != std::string::npos) continue;
    std::vector<std::string> cells;
    const auto raw = split(line.substr(1), '|');
    for (const auto& cell : raw) cells.push_back(trim(cell));
    md_rows.push_back(cells);
  }
  ASSERT_EQ(md_rows.size(), csv.size());
  for (std::size_t r = 0; r < csv.size(); ++r) {
    auto cells = split(csv[r], ',');
    if (!csv[r].empty() && csv[r].back() == ',') cells.emplace_back();
    EXPECT_EQ(cells, md_rows[r]) << "row " << r;
    if (r == 0) continue;
    // values parse back to what the study measured, at the printed precision
    for (std::size_t q = 0; q < table.quantities.size(); ++q) {
      const double v = std::stod(cells[1 + 2 * q]);
      EXPECT_NEAR(v, table.errors[r - 1][q], 5e-4 * table.errors[r - 1][q]);
    }
  }
}

TEST(Emit, WritesFileAndReportsIoErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "iflux_emit_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "t.csv").string();
  iflux::emit(small_table(), iflux::TableFormat::Csv, path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), iflux::format_table(small_table(), iflux::TableFormat::Csv));
  EXPECT_THROW(iflux::emit(small_table(), iflux::TableFormat::Csv, (dir / "missing" / "t.csv").string()),
               iflux::IoError);
  std::filesystem::remove_all(dir);
}

TEST(Study, DeterministicOutput) {
  const auto c = small_2d_config();
  const std::string a = iflux::format_table(iflux::run_study(c), iflux::TableFormat::Csv);
  const std::string b = iflux::format_table(iflux::run_study(c), iflux::TableFormat::Csv);
  EXPECT_EQ(a, b);
  iflux::RunConfig c1;
  c1.n_list = {16, 32};
  EXPECT_EQ(iflux::format_table(iflux::run_study(c1), iflux::TableFormat::Markdown),
            iflux::format_table(iflux::run_study(c1), iflux::TableFormat::Markdown));
}

TEST(Study, FailureStopsTheTableAndIsReported) {
  auto c = small_2d_config();
  c.eps_mult = 1e-9;  // empty tube at every N
  const auto table = iflux::run_study(c);
  EXPECT_EQ(table.rows(), 0);
  ASSERT_TRUE(table.failure.has_value());
  EXPECT_EQ(table.failure->n, 8);
  const std::string csv = iflux::format_table(table, iflux::TableFormat::Csv);
  EXPECT_NE(csv.find("# failed at N=8"), std::string::npos);
}

TEST(Study, UnderResolvedTransitionsAreFlagged) {
  iflux::RunConfig c = small_2d_config();
  c.params.r_gamma = 0.3;  // h = 0.275 at N = 8 exceeds R/2
  c.n_list = {8, 16, 32};
  const auto table = iflux::run_study(c);
  ASSERT_EQ(table.under_resolved.size(), 2u);
  EXPECT_TRUE(table.under_resolved[0]);
  EXPECT_FALSE(table.under_resolved[1]);
  const std::string md = iflux::format_table(table, iflux::TableFormat::Markdown);
  EXPECT_NE(md.find("N=8->16"), std::string::npos);
}

TEST(Norms, OneDimensionalAgreesWithDenseSampling) {
  const auto p = iflux::model_problem_1d(1.0 / 3.0, 2.0, 10.0);
  const auto sol = iflux::solve(p, iflux::Grid1d::uniform(16, p.alpha));
  const auto e = iflux::error_norms_1d(sol, p);
  const int m = 10000;
  double l2 = 0.0, linf = 0.0;
  for (int k = 0; k <= m; ++k) {
    const double x = static_cast<double>(k) / m;
    const double err = sol.evaluate(x, x < p.alpha ? iflux::SideSelector::Left : iflux::SideSelector::Right) -
                       p.exact(x);
    l2 += (k == 0 || k == m ? 0.5 : 1.0) * err * err / m;
    linf = std::max(linf, std::abs(err));
  }
  EXPECT_NEAR(e.l2, std::sqrt(l2), 0.01 * e.l2);
  EXPECT_NEAR(e.linf, linf, 0.01 * e.linf);
}

TEST(Norms, OneDimensionalConstantErrorHasUnitNorm) {
  iflux::Problem1d p = iflux::model_problem_1d(0.5, 1.0, 1.0);
  p.u = [](double x, Side) { return x; };
  p.du = [](double, Side) { return 1.0; };
  const iflux::Grid1d g = iflux::Grid1d::uniform(8, 0.5);
  iflux::Vector shifted(9);
  for (int i = 0; i <= 8; ++i) shifted(i) = g.node(i) + 1.0;
  const auto e = iflux::error_norms_1d(iflux::interpolate(shifted, g, p.coeff), p);
  EXPECT_NEAR(e.l2, 1.0, 1e-12);
  EXPECT_NEAR(e.h1_semi, 0.0, 1e-12);
  iflux::Vector exact(9);
  for (int i = 0; i <= 8; ++i) exact(i) = g.node(i);
  const auto z = iflux::error_norms_1d(iflux::interpolate(exact, g, p.coeff), p);
  EXPECT_LE(z.linf, 1e-12);
  EXPECT_LE(z.l2, 1e-12);
}

TEST(Norms, TwoDimensionalAgreesWithDenseSampling) {
  const auto p = iflux::model_problem_2d_trig(100.0, 1.0, 0.0, 0.9);
  const auto mesh = iflux::build_mesh(p.domain, 8);
  const auto sol = iflux::solve_augmented(p, mesh, iflux::extract_tube(mesh, p.circle, 3 * mesh.h),
                                          iflux::LsqMethod::SparseQr);
  const auto e = iflux::error_norms_2d(sol, p);
  const int m = 400;
  const double len = p.domain.side_length();
  const double cell = len / m;
  double l2 = 0.0, h1 = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const Vec2 x(p.domain.lo + (i + 0.5) * cell, p.domain.lo + (j + 0.5) * cell);
      const int el = mesh.locate(x);
      const double err = sol.u_at(el, x) - p.exact(x);
      const Vec2 gerr = sol.grad_u(el) - p.grad(x, p.side_of(x));
      l2 += err * err * cell * cell;
      h1 += gerr.squaredNorm() * cell * cell;
    }
  }
  EXPECT_NEAR(e.l2, std::sqrt(l2), 0.01 * e.l2);
  EXPECT_NEAR(e.h1_semi, std::sqrt(h1), 0.01 * e.h1_semi);
}
