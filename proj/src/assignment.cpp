#include "latefuse/assignment.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace latefuse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const CostMatrix& c) {
  if (c.rows < 0 || c.cols < 0) {
    throw std::invalid_argument("cost matrix dimensions must be non-negative");
  }
  const std::size_t n = static_cast<std::size_t>(c.rows) * static_cast<std::size_t>(c.cols);
  if (c.cost.size() != n || c.forbidden.size() != n) {
    throw std::invalid_argument("cost matrix storage does not match dimensions");
  }
  for (int i = 0; i < c.rows; ++i) {
    for (int j = 0; j < c.cols; ++j) {
      if (c.is_forbidden(i, j)) continue;
      const double v = c.at(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("allowed cost entries must be finite and non-negative");
      }
    }
  }
}

}  // namespace

CostMatrix::CostMatrix(int rows_, int cols_, double fill)
    : rows(rows_), cols(cols_) {
  if (rows_ < 0 || cols_ < 0) {
    throw std::invalid_argument("cost matrix dimensions must be non-negative");
  }
  const std::size_t n = static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_);
  cost.assign(n, fill);
  forbidden.assign(n, 0);
}

AssignmentResult solve_assignment(const CostMatrix& c) {
  validate(c);
  const int nr = c.rows;
  const int nc = c.cols;

  std::vector<int> match_row(nr, -1);  // row -> column
  std::vector<int> match_col(nc, -1);  // column -> row

  // Column potentials start at zero and only ever decrease. Zero is the one
  // safe initialization here: an unmatched column must never carry positive
  // potential, or Dijkstra's lengths stop tracking true costs and a cheap
  // column can tie with an expensive one (single row [5, 1] would lock onto
  // column 0). Classic column reduction is only sound together with its
  // greedy pre-matching step, which itself is wrong for rectangular inputs
  // where rows may legitimately stay unmatched.
  std::vector<double> v(nc, 0.0);

  // Shortest augmenting paths from all free rows at once. Free rows carry
  // an implicit zero potential; matched rows' potential is recovered from
  // their matched edge, so only column potentials are stored.
  std::vector<double> dist(nc);
  std::vector<int> parent(nc);  // row that set dist[j]
  std::vector<char> done(nc);
  using HeapItem = std::pair<double, int>;  // (distance, column); ties -> lower column
  while (true) {
    bool any_free = false;
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap;
    dist.assign(nc, kInf);
    parent.assign(nc, -1);
    done.assign(nc, 0);
    for (int i = 0; i < nr; ++i) {
      if (match_row[i] != -1) continue;
      for (int j = 0; j < nc; ++j) {
        if (c.is_forbidden(i, j)) continue;
        any_free = true;
        const double d = c.at(i, j) - v[j];
        if (d < dist[j]) {
          dist[j] = d;
          parent[j] = i;
        }
      }
    }
    if (!any_free) break;
    for (int j = 0; j < nc; ++j) {
      if (parent[j] != -1) heap.emplace(dist[j], j);
    }

    int sink = -1;
    double sink_dist = kInf;
    while (!heap.empty()) {
      const auto [d, j] = heap.top();
      heap.pop();
      if (done[j] || d > dist[j]) continue;  // stale heap entry
      done[j] = 1;
      if (match_col[j] == -1) {
        sink = j;
        sink_dist = d;
        break;
      }
      const int i = match_col[j];
      const double u_i = c.at(i, j) - v[j];  // implicit row potential
      for (int j2 = 0; j2 < nc; ++j2) {
        if (done[j2] || c.is_forbidden(i, j2)) continue;
        const double nd = d + c.at(i, j2) - v[j2] - u_i;
        if (nd < dist[j2]) {
          dist[j2] = nd;
          parent[j2] = i;
          heap.emplace(nd, j2);
        }
      }
    }
    if (sink == -1) break;  // no augmenting path left: cardinality is maximal

    // Dual update only for columns finalized at distance < sink_dist; the
    // sink itself and unreached columns keep their potential.
    for (int j = 0; j < nc; ++j) {
      if (done[j] && j != sink) v[j] += dist[j] - sink_dist;
    }

    // Augment along parent pointers back to a free row.
    int j = sink;
    while (j != -1) {
      const int i = parent[j];
      match_col[j] = i;
      std::swap(match_row[i], j);
    }
  }

  AssignmentResult out;
  for (int i = 0; i < nr; ++i) {
    if (match_row[i] == -1) {
      out.unmatched_rows.push_back(i);
    } else {
      out.matches.emplace_back(i, match_row[i]);
      out.total_cost += c.at(i, match_row[i]);
    }
  }
  for (int j = 0; j < nc; ++j) {
    if (match_col[j] == -1) out.unmatched_cols.push_back(j);
  }
  return out;
}

}  // namespace latefuse
