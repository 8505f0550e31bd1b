#pragma once

// The eight reference tables of I/J/K/L values at a = 1/u, b = 1/v.

#include <optional>
#include <string>
#include <vector>

#include "cyclemetrics/montecarlo.hpp"
#include "cyclemetrics/semismooth.hpp"

namespace cyclemetrics {

struct TableCell {
  int u;
  /// Column label: "I0" / "K0" for the leading columns of tables 1 and 7,
  /// otherwise the value of v.
  std::string column;
  /// v, or 0 for the leading I0 / K0 columns.
  int v;
  /// Query that reproduces the value (same arguments, same code path).
  JointProbQuery query;
  /// Name of the query kind as accepted by parse_prob_kind.
  std::string kind;
  double value = 0.0;
  bool provisional = false;
  std::optional<EstimateWithCI> simulated;
};

struct Table {
  int id;
  std::string caption;
  std::vector<int> rows;
  std::vector<std::string> columns;
  std::vector<TableCell> cells;

  /// Cell at (u, column), or nullptr for an empty position.
  const TableCell* find(int u, const std::string& column) const;
};

/// Cell layout of table `id` (1..8) without values.
Table table_layout(int id);

/// Computes every cell of table `id` on `threads` workers.
Table compute_table(int id, int threads = 1);

/// Adds Monte Carlo estimates of the matching events to the provisional
/// cells of tables 7 and 8 (K1 and L1).
void simulate_table(Table& table, const SimConfig& config);

}  // namespace cyclemetrics
