#include "atomsort/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace atomsort {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Rectangular LSAP by shortest augmenting paths (Jonker-Volgenant style),
/// n targets <= m atoms. Returns atom index per target.
std::vector<int> lsap_augmenting(const CostMatrix& c) {
  const int n = c.n_targets;
  const int m = c.n_atoms;
  std::vector<double> u(n, 0.0), v(m, 0.0), shortest(m);
  std::vector<int> path(m, -1), row4col(m, -1), col4row(n, -1);
  std::vector<char> in_sr(n), in_sc(m);
  std::vector<int> remaining(m);

  for (int cur = 0; cur < n; ++cur) {
    std::fill(in_sr.begin(), in_sr.end(), 0);
    std::fill(in_sc.begin(), in_sc.end(), 0);
    std::fill(shortest.begin(), shortest.end(), kInf);
    std::iota(remaining.begin(), remaining.end(), 0);
    int num_remaining = m;
    double min_val = 0.0;
    int i = cur;
    int sink = -1;
    while (sink == -1) {
      in_sr[i] = 1;
      int index_lowest = -1;
      double lowest = kInf;
      for (int it = 0; it < num_remaining; ++it) {
        const int j = remaining[it];
        const double r = min_val + c.at(i, j) - u[i] - v[j];
        if (r < shortest[j]) {
          path[j] = i;
          shortest[j] = r;
        }
        if (shortest[j] < lowest ||
            (shortest[j] == lowest && row4col[j] == -1)) {
          lowest = shortest[j];
          index_lowest = it;
        }
      }
      min_val = lowest;
      if (!(min_val < kInf)) {
        throw std::runtime_error("solve_lsap: infeasible cost matrix");
      }
      const int j = remaining[index_lowest];
      if (row4col[j] == -1) {
        sink = j;
      } else {
        i = row4col[j];
      }
      in_sc[j] = 1;
      remaining[index_lowest] = remaining[--num_remaining];
    }
    u[cur] += min_val;
    for (int ip = 0; ip < n; ++ip) {
      if (in_sr[ip] && ip != cur) u[ip] += min_val - shortest[col4row[ip]];
    }
    for (int jp = 0; jp < m; ++jp) {
      if (in_sc[jp]) v[jp] -= min_val - shortest[jp];
    }
    int j = sink;
    while (true) {
      const int ip = path[j];
      row4col[j] = ip;
      std::swap(col4row[ip], j);
      if (ip == cur) break;
    }
  }
  return col4row;
}

/// Hopcroft-Karp maximum matching on the thresholded matrix: target t may
/// use atom a iff cost(t, a) <= threshold. Returns true when every target
/// is matched; fills atom_for_target with the matching found.
bool threshold_feasible(const CostMatrix& c, double threshold,
                        std::vector<int>& atom_for_target) {
  const int n = c.n_targets;
  const int m = c.n_atoms;
  std::vector<int> match_t(n, -1), match_a(m, -1);
  std::vector<int> dist(n);
  std::vector<int> bfs_queue;
  bfs_queue.reserve(n);
  constexpr int kUnreached = std::numeric_limits<int>::max();

  int matched = 0;
  // Greedy seeding keeps the augmenting phase short.
  for (int t = 0; t < n; ++t) {
    for (int a = 0; a < m; ++a) {
      if (match_a[a] == -1 && c.at(t, a) <= threshold) {
        match_t[t] = a;
        match_a[a] = t;
        ++matched;
        break;
      }
    }
  }

  auto bfs = [&]() {
    bfs_queue.clear();
    for (int t = 0; t < n; ++t) {
      if (match_t[t] == -1) {
        dist[t] = 0;
        bfs_queue.push_back(t);
      } else {
        dist[t] = kUnreached;
      }
    }
    bool found_free_atom = false;
    for (std::size_t head = 0; head < bfs_queue.size(); ++head) {
      const int t = bfs_queue[head];
      for (int a = 0; a < m; ++a) {
        if (c.at(t, a) > threshold) continue;
        const int t2 = match_a[a];
        if (t2 == -1) {
          found_free_atom = true;
        } else if (dist[t2] == kUnreached) {
          dist[t2] = dist[t] + 1;
          bfs_queue.push_back(t2);
        }
      }
    }
    return found_free_atom;
  };

  std::function<bool(int)> dfs = [&](int t) {
    for (int a = 0; a < m; ++a) {
      if (c.at(t, a) > threshold) continue;
      const int t2 = match_a[a];
      if (t2 == -1 || (dist[t2] == dist[t] + 1 && dfs(t2))) {
        match_t[t] = a;
        match_a[a] = t;
        return true;
      }
    }
    dist[t] = kUnreached;
    return false;
  };

  while (matched < n && bfs()) {
    for (int t = 0; t < n; ++t) {
      if (match_t[t] == -1 && dfs(t)) ++matched;
    }
  }
  if (matched < n) return false;
  atom_for_target = std::move(match_t);
  return true;
}

/// Pushes equal-cost ties toward the lowest atom index at the lowest
/// target index. `edge_cap` (LBAP) keeps every assigned entry at or below
/// the bottleneck; pass +inf for LSAP where only the total matters.
void canonicalize_ties(const CostMatrix& c, std::vector<int>& assign,
                       double edge_cap) {
  const int n = c.n_targets;
  const int m = c.n_atoms;
  std::vector<char> used(m, 0);
  for (const int a : assign) used[a] = 1;

  for (int sweep = 0; sweep < 8; ++sweep) {
    bool changed = false;
    for (int t = 0; t < n; ++t) {
      // Prefer a lower-indexed unassigned atom at equal cost.
      for (int a = 0; a < assign[t]; ++a) {
        if (!used[a] && c.at(t, a) == c.at(t, assign[t]) &&
            c.at(t, a) <= edge_cap) {
          used[assign[t]] = 0;
          used[a] = 1;
          assign[t] = a;
          changed = true;
          break;
        }
      }
      // Equal-cost pair swaps that lower the atom index at the earlier
      // target.
      for (int t2 = t + 1; t2 < n; ++t2) {
        const int a1 = assign[t];
        const int a2 = assign[t2];
        if (a2 < a1 && c.at(t, a2) + c.at(t2, a1) == c.at(t, a1) + c.at(t2, a2) &&
            c.at(t, a2) <= edge_cap && c.at(t2, a1) <= edge_cap) {
          assign[t] = a2;
          assign[t2] = a1;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
}

Assignment finish(const CostMatrix& c, std::vector<int> assign) {
  Assignment out;
  out.atom_for_target = std::move(assign);
  for (int t = 0; t < c.n_targets; ++t) {
    const double v = c.at(t, out.atom_for_target[t]);
    out.total_cost += v;
    out.max_cost = std::max(out.max_cost, v);
  }
  return out;
}

}  // namespace

double site_distance(Site a, Site b, Metric metric) {
  switch (metric) {
    case Metric::Manhattan:
      return static_cast<double>(manhattan(a, b));
    case Metric::Chebyshev:
      return static_cast<double>(chebyshev(a, b));
    case Metric::Euclidean:
    default: {
      const double dr = a.row - b.row;
      const double dc = a.col - b.col;
      return std::sqrt(dr * dr + dc * dc);
    }
  }
}

CostMatrix build_cost_matrix(std::span<const Site> atoms,
                             std::span<const Site> targets, Metric metric) {
  if (atoms.empty() || targets.empty()) {
    throw std::invalid_argument("build_cost_matrix: empty site list");
  }
  if (atoms.size() < targets.size()) {
    throw std::invalid_argument("build_cost_matrix: insufficient atoms");
  }
  CostMatrix c;
  c.n_targets = static_cast<int>(targets.size());
  c.n_atoms = static_cast<int>(atoms.size());
  c.metric = metric;
  c.entries.resize(static_cast<std::size_t>(c.n_targets) *
                   static_cast<std::size_t>(c.n_atoms));
  for (int k = 0; k < c.n_targets; ++k) {
    for (int l = 0; l < c.n_atoms; ++l) {
      c.entries[static_cast<std::size_t>(k) * c.n_atoms + l] =
          site_distance(targets[k], atoms[l], metric);
    }
  }
  return c;
}

Assignment solve_lsap(const CostMatrix& c) {
  std::vector<int> assign = lsap_augmenting(c);
  canonicalize_ties(c, assign, kInf);
  return finish(c, assign);
}

Assignment solve_lbap(const CostMatrix& c) {
  std::vector<double> values = c.entries;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<int> best;
  int lo = 0;
  int hi = static_cast<int>(values.size()) - 1;
  // Invariant: values[hi] is feasible once `best` is non-empty.
  while (lo <= hi) {
    const int mid = lo + (hi - lo) / 2;
    std::vector<int> candidate;
    if (threshold_feasible(c, values[mid], candidate)) {
      best = std::move(candidate);
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
  if (best.empty()) {
    throw std::runtime_error("solve_lbap: no feasible assignment");
  }
  double bottleneck = 0.0;
  for (int t = 0; t < c.n_targets; ++t) {
    bottleneck = std::max(bottleneck, c.at(t, best[t]));
  }
  canonicalize_ties(c, best, bottleneck);
  return finish(c, best);
}

}  // namespace atomsort
