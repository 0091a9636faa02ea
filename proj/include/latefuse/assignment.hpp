#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "latefuse/types.hpp"

namespace latefuse {

/// Dense rectangular cost matrix with a forbidden-pair mask. Forbidden pairs
/// are true infeasibilities, never large sentinel costs, so the solver can
/// leave detections unmatched instead of forcing bad pairs.
struct CostMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> cost;            // row-major, rows*cols
  std::vector<std::uint8_t> forbidden; // row-major, nonzero = infeasible

  CostMatrix() = default;
  CostMatrix(int rows, int cols, double fill = 0.0);

  double& at(int i, int j) { return cost[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return cost[static_cast<std::size_t>(i) * cols + j]; }
  void forbid(int i, int j) { forbidden[static_cast<std::size_t>(i) * cols + j] = 1; }
  bool is_forbidden(int i, int j) const {
    return forbidden[static_cast<std::size_t>(i) * cols + j] != 0;
  }
};

/// Matching plus the leftover index sets. matches are sorted by row index;
/// every row and column appears exactly once across matches/unmatched.
struct AssignmentResult {
  std::vector<std::pair<int, int>> matches;
  std::vector<int> unmatched_rows;
  std::vector<int> unmatched_cols;
  double total_cost = 0.0;
};

/// Minimum-cost assignment over the allowed pairs: among all matchings of
/// maximum feasible cardinality, returns one of minimum total cost
/// (successive shortest augmenting paths over all free rows at once, with
/// dual potentials starting at zero). Deterministic; ties resolve toward
/// lower row/column indices. Throws std::invalid_argument if an allowed
/// entry is negative or non-finite.
AssignmentResult solve_assignment(const CostMatrix& c);

}  // namespace latefuse
