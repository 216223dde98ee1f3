#include "iflux/study.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "iflux/augmented.hpp"
#include "iflux/error.hpp"
#include "iflux/ifem1d.hpp"
#include "iflux/norms.hpp"
#include "iflux/tube.hpp"

namespace iflux {

OrderEstimate estimate_orders(const std::vector<int>& n, const std::vector<double>& errors,
                              const std::vector<bool>& under_resolved) {
  if (n.size() != errors.size()) throw DimensionError("need one error per mesh size");
  OrderEstimate est;
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < n.size(); ++k) {
    OrderEntry entry;
    const double e0 = errors[k];
    const double e1 = errors[k + 1];
    if (!(e0 > 0.0) || !(e1 > 0.0) || n[k + 1] <= n[k]) {
      entry.status = OrderStatus::Degenerate;
      entry.value = std::numeric_limits<double>::quiet_NaN();
    } else {
      entry.value = std::log(e0 / e1) / std::log(static_cast<double>(n[k + 1]) / n[k]);
      entry.status = (k < under_resolved.size() && under_resolved[k]) ? OrderStatus::UnderResolved : OrderStatus::Ok;
      if (entry.status == OrderStatus::Ok) {
        sum += entry.value;
        ++est.used;
      }
    }
    est.orders.push_back(entry);
  }
  est.average = est.used > 0 ? sum / est.used : std::numeric_limits<double>::quiet_NaN();
  return est;
}

int ConvergenceTable::column(const std::string& quantity) const {
  const auto it = std::find(quantities.begin(), quantities.end(), quantity);
  if (it == quantities.end()) throw ParameterError("table has no quantity '" + quantity + "'");
  return static_cast<int>(std::distance(quantities.begin(), it));
}

std::vector<double> ConvergenceTable::series(const std::string& quantity) const {
  const int c = column(quantity);
  std::vector<double> out;
  for (const auto& row : errors) out.push_back(row[c]);
  return out;
}

OrderEstimate ConvergenceTable::orders(int c) const {
  std::vector<double> col;
  for (const auto& row : errors) col.push_back(row[c]);
  return estimate_orders(n, col, under_resolved);
}

OrderEstimate ConvergenceTable::orders(const std::string& quantity) const { return orders(column(quantity)); }

std::vector<int> default_n_list(int dimension, bool fine) {
  if (dimension == 1) return {16, 32, 64, 128, 256, 512, 1024};
  std::vector<int> out = {8, 16, 32, 64, 128};
  if (fine) {
    out.push_back(256);
    out.push_back(512);
  }
  return out;
}

void validate_n_list(const std::vector<int>& n_list) {
  if (n_list.empty()) throw ParameterError("N list is empty");
  for (std::size_t k = 1; k < n_list.size(); ++k) {
    if (n_list[k] <= n_list[k - 1]) throw ParameterError("N list must be strictly increasing");
  }
}

namespace {

template <class Fn>
void run_rows(ConvergenceTable& table, const std::vector<int>& n_list, Fn&& row_for) {
  for (int n : n_list) {
    try {
      table.errors.push_back(row_for(n));
      table.n.push_back(n);
    } catch (const std::exception& err) {
      table.failure = StudyFailure{n, err.what()};
      break;
    }
  }
}

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

ConvergenceTable run_study_1d(const RunConfig& config) {
  validate_n_list(config.n_list);
  const Problem1d problem = make_problem_1d(config.problem, config.params);
  ConvergenceTable table;
  std::ostringstream title;
  title << config.problem << ": alpha = " << problem.alpha << ", beta = (" << problem.coeff.beta_minus << ", "
        << problem.coeff.beta_plus << "), q = " << problem.q;
  table.title = title.str();
  table.quantities = {"linf_u", "linf_nodal", "l2_u", "h1_u", "gamma_minus", "gamma_plus", "gamma_0",
                      "gamma_1", "ux_minus", "ux_minus_raw", "interp_l2", "interp_h1", "kappa_minus",
                      "kappa_plus"};
  run_rows(table, config.n_list, [&](int n) {
    const Grid1d grid = Grid1d::uniform(n, problem.alpha);
    const ErrorReport1d r = error_norms_1d(solve(problem, grid), problem);
    const ErrorReport1d ri = error_norms_1d(interpolate(problem, grid), problem);
    return std::vector<double>{r.linf,        r.linf_nodal,   r.l2,          r.h1_semi,       r.gamma_minus,
                               r.gamma_plus,  r.gamma_0,      r.gamma_1,     r.ux_minus_recovered,
                               r.ux_minus_raw, ri.l2,         ri.h1_semi,    ri.ux_minus_raw, ri.ux_plus_raw};
  });
  const double limit = 0.5 * std::min(problem.alpha, 1.0 - problem.alpha);
  for (int k = 0; k + 1 < table.rows(); ++k) table.under_resolved.push_back(1.0 / table.n[k] > limit);
  return table;
}

ConvergenceTable run_study_2d(const RunConfig& config) {
  validate_n_list(config.n_list);
  const Problem2d problem = make_problem_2d(config.problem, config.params);
  ConvergenceTable table;
  std::ostringstream title;
  title << config.problem << ": R = " << problem.circle.radius << ", beta = (" << problem.coeff.beta_minus << ", "
        << problem.coeff.beta_plus << "), q = " << problem.q << ", tube = ";
  if (config.whole_tube || problem.circle.empty()) {
    title << "whole domain";
  } else {
    title << config.eps_mult << "h";
  }
  title << ", solver = " << to_string(config.method);
  if (config.geometry == GeometryMode::Exact) title << ", exact geometry";
  table.title = title.str();
  table.quantities = {"l2_u", "h1_u", "linf_nodal", "flux_gamma", "flux_gamma_minus", "flux_gamma_plus", "v_tube"};
  if (config.with_standard) {
    for (const char* q : {"std_l2_u", "std_h1_u", "std_flux_gamma"}) table.quantities.emplace_back(q);
  }
  run_rows(table, config.n_list, [&](int n) {
    const TriMesh mesh = build_mesh(problem.domain, n);
    const double eps = config.whole_tube ? std::numeric_limits<double>::infinity() : config.eps_mult * mesh.h;
    const TubeRegion tube = extract_tube(mesh, problem.circle, eps);
    const auto disc = discretize(problem, mesh, &tube, config.geometry);
    const ErrorReport2d r = error_norms_2d(solve_augmented(assemble_augmented(problem, disc), config.method), problem);
    std::vector<double> row = {r.l2, r.h1_semi, r.linf_nodal, r.flux_l2, r.flux_l2_minus, r.flux_l2_plus, r.tube_v_l2};
    if (config.with_standard) {
      const ErrorReport2d s = error_norms_2d(solve_standard_fem(assemble_standard(problem, mesh, config.geometry)), problem);
      row.insert(row.end(), {s.l2, s.h1_semi, s.std_flux_l2});
    }
    return row;
  });
  const double r = problem.circle.radius;
  for (int k = 0; k + 1 < table.rows(); ++k) {
    const double h = problem.domain.side_length() / table.n[k];
    table.under_resolved.push_back(r > 0.0 && h > 0.5 * r);
  }
  return table;
}

ConvergenceTable run_study(const RunConfig& config) {
  return problem_dimension(config.problem) == 1 ? run_study_1d(config) : run_study_2d(config);
}

TableFormat parse_table_format(const std::string& name) {
  if (name == "csv") return TableFormat::Csv;
  if (name == "markdown") return TableFormat::Markdown;
  throw ParameterError("unknown table format '" + name + "' (expected csv or markdown)");
}

namespace {

struct Cells {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> averages;
};

std::string order_cell(const OrderEntry& e) {
  switch (e.status) {
    case OrderStatus::Undefined:
      return "";
    case OrderStatus::Degenerate:
      return "degenerate";
    case OrderStatus::Ok:
    case OrderStatus::UnderResolved:
      return fmt(e.value, "%.3f");
  }
  return "";
}

Cells build_cells(const ConvergenceTable& t) {
  Cells c;
  c.header.push_back("N");
  for (const auto& q : t.quantities) {
    c.header.push_back(q + "_err[abs]");
    c.header.push_back(q + "_order[-]");
  }
  std::vector<OrderEstimate> est;
  for (int q = 0; q < static_cast<int>(t.quantities.size()); ++q) est.push_back(t.orders(q));
  for (int r = 0; r < t.rows(); ++r) {
    std::vector<std::string> row{std::to_string(t.n[r])};
    for (std::size_t q = 0; q < t.quantities.size(); ++q) {
      row.push_back(fmt(t.errors[r][q], "%.3E"));
      row.push_back(r == 0 ? std::string() : order_cell(est[q].orders[r - 1]));
    }
    c.rows.push_back(std::move(row));
  }
  for (std::size_t q = 0; q < t.quantities.size(); ++q) {
    c.averages.push_back(std::isnan(est[q].average) ? std::string("n/a") : fmt(est[q].average, "%.3f"));
  }
  return c;
}

}  // namespace

std::string format_table(const ConvergenceTable& table, TableFormat format) {
  if (table.rows() == 0 && !table.failure) throw ParameterError("cannot emit an empty table");
  const Cells c = build_cells(table);
  std::ostringstream out;
  if (format == TableFormat::Csv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
      out << '\n';
    };
    line(c.header);
    for (const auto& r : c.rows) line(r);
    if (table.failure) out << "# failed at N=" << table.failure->n << ": " << table.failure->message << '\n';
    return out.str();
  }
  auto line = [&](const std::vector<std::string>& cells) {
    out << '|';
    for (const auto& cell : cells) out << ' ' << cell << " |";
    out << '\n';
  };
  out << "### " << table.title << "\n\n";
  line(c.header);
  out << '|';
  for (std::size_t k = 0; k < c.header.size(); ++k) out << " --- |";
  out << '\n';
  for (const auto& r : c.rows) line(r);
  out << "\nAverage order:";
  for (std::size_t q = 0; q < table.quantities.size(); ++q) {
    out << (q ? ", " : " ") << table.quantities[q] << " " << c.averages[q];
  }
  out << '\n';
  bool any_flag = false;
  for (bool u : table.under_resolved) any_flag = any_flag || u;
  if (any_flag) {
    out << "Transitions from an under-resolved coarse mesh are excluded from the averages:";
    for (int k = 0; k + 1 < table.rows(); ++k) {
      if (table.under_resolved[k]) out << " N=" << table.n[k] << "->" << table.n[k + 1];
    }
    out << '\n';
  }
  if (table.failure) out << "\nFailed at N=" << table.failure->n << ": " << table.failure->message << '\n';
  return out.str();
}

}  // namespace iflux
