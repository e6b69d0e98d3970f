#include "amrst/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include "amrst/errors.hpp"

namespace amrst {

NbowDistribution make_nbow(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw EmptyExtractionError("cannot build a distribution from no tokens");
  NbowDistribution d;
  std::map<std::string, double> counts;  // first-seen order below
  std::vector<std::string> order;
  for (const auto& t : tokens) {
    if (counts.emplace(t, 0.0).second) order.push_back(t);
    counts[t] += 1.0;
  }
  d.tokens = std::move(order);
  d.weights.resize(static_cast<Eigen::Index>(d.tokens.size()));
  const double total = static_cast<double>(tokens.size());
  for (std::size_t i = 0; i < d.tokens.size(); ++i)
    d.weights[static_cast<Eigen::Index>(i)] = counts[d.tokens[i]] / total;
  return d;
}

namespace {

constexpr double kReducedCostTol = 1e-11;

struct BasisCell {
  int row;
  int col;
};

}  // namespace

TransportPlan solve_transport(const NbowDistribution& supply, const NbowDistribution& demand,
                              const Eigen::MatrixXd& costs) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  if (m == 0 || n == 0) throw ValidationError("transport requires non-empty distributions");
  if (costs.rows() != m || costs.cols() != n)
    throw ValidationError("cost matrix is " + std::to_string(costs.rows()) + "x" +
                          std::to_string(costs.cols()) + ", expected " + std::to_string(m) + "x" +
                          std::to_string(n));
  if ((costs.array() < 0.0).any()) throw ValidationError("transport costs must be nonnegative");
  if (std::abs(supply.weights.sum() - demand.weights.sum()) > 1e-6)
    throw ValidationError("transportation problem is not balanced");

  Eigen::MatrixXd flows = Eigen::MatrixXd::Zero(m, n);
  Eigen::MatrixXi basic = Eigen::MatrixXi::Zero(m, n);
  std::vector<BasisCell> basis;
  basis.reserve(static_cast<std::size_t>(m + n - 1));

  // Northwest-corner initial basic feasible solution: m+n-1 basic cells,
  // degenerate zero flows included.
  {
    Eigen::VectorXd a = supply.weights;
    Eigen::VectorXd b = demand.weights;
    int i = 0, j = 0;
    while (true) {
      const double f = std::min(a[i], b[j]);
      flows(i, j) = f;
      basic(i, j) = 1;
      basis.push_back({i, j});
      a[i] -= f;
      b[j] -= f;
      if (i == m - 1 && j == n - 1) break;
      if (j == n - 1)
        ++i;
      else if (i == m - 1)
        ++j;
      else if (a[i] <= b[j])
        ++i;
      else
        ++j;
    }
  }

  // Tree nodes: rows 0..m-1, columns m..m+n-1.
  const int nodes = m + n;
  std::vector<std::vector<int>> adj;  // adjacency via basis cell index
  Eigen::VectorXd u(m), v(n);

  auto rebuild_adjacency = [&] {
    adj.assign(static_cast<std::size_t>(nodes), {});
    for (std::size_t k = 0; k < basis.size(); ++k) {
      adj[static_cast<std::size_t>(basis[k].row)].push_back(static_cast<int>(k));
      adj[static_cast<std::size_t>(m + basis[k].col)].push_back(static_cast<int>(k));
    }
  };

  auto compute_duals = [&] {
    std::vector<char> seen(static_cast<std::size_t>(nodes), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    u[0] = 0.0;
    while (!queue.empty()) {
      const int node = queue.front();
      queue.pop_front();
      for (int k : adj[static_cast<std::size_t>(node)]) {
        const auto& cell = basis[static_cast<std::size_t>(k)];
        const int other = node < m ? m + cell.col : cell.row;
        if (seen[static_cast<std::size_t>(other)]) continue;
        seen[static_cast<std::size_t>(other)] = 1;
        if (node < m)
          v[cell.col] = costs(cell.row, cell.col) - u[cell.row];
        else
          u[cell.row] = costs(cell.row, cell.col) - v[cell.col];
        queue.push_back(other);
      }
    }
  };

  // Unique tree path row `si` -> column `sj`, returned as basis cell indices.
  auto tree_path = [&](int si, int sj) {
    std::vector<int> parent_edge(static_cast<std::size_t>(nodes), -1);
    std::vector<int> parent_node(static_cast<std::size_t>(nodes), -1);
    std::vector<char> seen(static_cast<std::size_t>(nodes), 0);
    std::deque<int> queue{si};
    seen[static_cast<std::size_t>(si)] = 1;
    const int target = m + sj;
    while (!queue.empty()) {
      const int node = queue.front();
      queue.pop_front();
      if (node == target) break;
      for (int k : adj[static_cast<std::size_t>(node)]) {
        const auto& cell = basis[static_cast<std::size_t>(k)];
        const int other = node < m ? m + cell.col : cell.row;
        if (seen[static_cast<std::size_t>(other)]) continue;
        seen[static_cast<std::size_t>(other)] = 1;
        parent_edge[static_cast<std::size_t>(other)] = k;
        parent_node[static_cast<std::size_t>(other)] = node;
        queue.push_back(other);
      }
    }
    std::vector<int> path;
    for (int node = target; node != si; node = parent_node[static_cast<std::size_t>(node)])
      path.push_back(parent_edge[static_cast<std::size_t>(node)]);
    std::reverse(path.begin(), path.end());
    return path;
  };

  const long max_pivots = 2000L * (m + n) + 10000L;
  for (long pivot = 0; pivot < max_pivots; ++pivot) {
    rebuild_adjacency();
    compute_duals();

    // Bland's rule: first improving nonbasic cell in row-major order.
    int ei = -1, ej = -1;
    for (int i = 0; i < m && ei < 0; ++i)
      for (int j = 0; j < n; ++j) {
        if (basic(i, j)) continue;
        if (costs(i, j) - u[i] - v[j] < -kReducedCostTol) {
          ei = i;
          ej = j;
          break;
        }
      }
    if (ei < 0) break;  // optimal

    const std::vector<int> path = tree_path(ei, ej);
    // Entering cell gets +theta; path cells alternate -,+,-,... starting
    // and ending with '-' (the path from a row to a column has odd length).
    double theta = std::numeric_limits<double>::infinity();
    int leaving = -1;
    for (std::size_t t = 0; t < path.size(); t += 2) {
      const auto& cell = basis[static_cast<std::size_t>(path[t])];
      if (flows(cell.row, cell.col) < theta) {
        theta = flows(cell.row, cell.col);
        leaving = path[t];
      }
    }
    for (std::size_t t = 0; t < path.size(); ++t) {
      const auto& cell = basis[static_cast<std::size_t>(path[t])];
      flows(cell.row, cell.col) += (t % 2 == 0) ? -theta : theta;
    }
    flows(ei, ej) += theta;

    const auto& out = basis[static_cast<std::size_t>(leaving)];
    basic(out.row, out.col) = 0;
    flows(out.row, out.col) = 0.0;  // clear any -0/epsilon residue
    basic(ei, ej) = 1;
    basis[static_cast<std::size_t>(leaving)] = {ei, ej};
  }

  TransportPlan plan;
  plan.flows = flows;
  plan.cost = (flows.array() * costs.array()).sum();
  return plan;
}

}  // namespace amrst
