#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iflux/geometry.hpp"
#include "iflux/problems.hpp"
#include "iflux/solvers.hpp"

namespace iflux {

enum class OrderStatus { Undefined, Ok, Degenerate, UnderResolved };

struct OrderEntry {
  double value = 0.0;
  OrderStatus status = OrderStatus::Undefined;
};

struct OrderEstimate {
  std::vector<OrderEntry> orders;  // one per transition N_k -> N_{k+1}
  double average = 0.0;            // NaN when no transition qualifies
  int used = 0;
};

// p_k = log(E_k / E_{k+1}) / log(N_{k+1} / N_k). Transitions with a
// non-positive error are Degenerate; those listed in under_resolved keep
// their value but are left out of the average, as are Degenerate ones.
OrderEstimate estimate_orders(const std::vector<int>& n, const std::vector<double>& errors,
                              const std::vector<bool>& under_resolved = {});

struct StudyFailure {
  int n = 0;
  std::string message;
};

struct ConvergenceTable {
  std::string title;
  std::vector<std::string> quantities;
  std::vector<int> n;
  std::vector<std::vector<double>> errors;  // [row][quantity]
  std::vector<bool> under_resolved;         // per transition
  std::optional<StudyFailure> failure;

  int rows() const { return static_cast<int>(n.size()); }
  int column(const std::string& quantity) const;
  std::vector<double> series(const std::string& quantity) const;
  OrderEstimate orders(const std::string& quantity) const;
  OrderEstimate orders(int column) const;
};

struct RunConfig {
  std::string problem = "paper-1d";
  ProblemParams params;
  std::vector<int> n_list;
  double eps_mult = 3.0;
  bool whole_tube = false;
  GeometryMode geometry = GeometryMode::Polyline;
  LsqMethod method = LsqMethod::SparseQr;
  bool with_standard = true;
};

std::vector<int> default_n_list(int dimension, bool fine = false);
void validate_n_list(const std::vector<int>& n_list);

// 1D columns: solution errors, flux functional errors, one-sided derivative
// errors at alpha, and the interpolation (pi_h) errors.
ConvergenceTable run_study_1d(const RunConfig& config);
// 2D columns: augmented solution and flux errors, then the standard FEM
// baseline unless disabled.
ConvergenceTable run_study_2d(const RunConfig& config);
ConvergenceTable run_study(const RunConfig& config);

enum class TableFormat { Csv, Markdown };
TableFormat parse_table_format(const std::string& name);

std::string format_table(const ConvergenceTable& table, TableFormat format);
// Writes format_table's output; unwritable paths raise IoError.
void emit(const ConvergenceTable& table, TableFormat format, const std::string& path);

}  // namespace iflux
