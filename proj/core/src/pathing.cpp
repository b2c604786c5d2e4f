#include "atomsort/pathing.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace atomsort {

namespace {

// Vertical progress is preferred over horizontal, then diagonals, giving
// deterministic paths among equals.
constexpr std::array<std::pair<int, int>, 8> kDirections = {{
    {-1, 0}, {1, 0}, {0, -1}, {0, 1}, {-1, -1}, {-1, 1}, {1, -1}, {1, 1},
}};

int direction_count(Connectivity c) {
  return c == Connectivity::Eight ? 8 : 4;
}

/// Generic grid BFS; `passable(site)` gates which sites may be entered.
/// Returns the site sequence from -> to, or nullopt.
std::optional<std::vector<Site>> bfs_route(
    const ArrayState& state, Site from, Site to, Connectivity connectivity,
    const std::function<bool(Site)>& passable) {
  if (!state.in_bounds(from) || !state.in_bounds(to)) {
    throw std::invalid_argument("bfs_route: endpoint out of bounds");
  }
  if (from == to) return std::vector<Site>{from};

  const int rows = state.rows();
  const int cols = state.cols();
  const int ndirs = direction_count(connectivity);
  std::vector<int> parent(static_cast<std::size_t>(rows) * cols, -2);
  auto idx = [cols](Site s) { return s.row * cols + s.col; };

  std::vector<Site> queue;
  queue.reserve(static_cast<std::size_t>(rows) * cols);
  queue.push_back(from);
  parent[idx(from)] = -1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Site cur = queue[head];
    for (int d = 0; d < ndirs; ++d) {
      const Site next{cur.row + kDirections[d].first,
                      cur.col + kDirections[d].second};
      if (!state.in_bounds(next) || parent[idx(next)] != -2) continue;
      if (!(next == to) && !passable(next)) continue;
      parent[idx(next)] = idx(cur);
      if (next == to) {
        std::vector<Site> route;
        int at = idx(next);
        while (at != -1) {
          route.push_back({at / cols, at % cols});
          at = parent[at];
        }
        std::reverse(route.begin(), route.end());
        return route;
      }
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

Path route_to_path(const std::vector<Site>& route, std::size_t begin,
                   std::size_t end, Path::Kind kind) {
  Path p;
  p.kind = kind;
  for (std::size_t i = begin; i + 1 <= end; ++i) {
    p.steps.push_back({route[i], route[i + 1]});
  }
  return p;
}

}  // namespace

std::optional<Path> shortest_direct_path(const ArrayState& state, Site from,
                                         Site to, Connectivity connectivity) {
  if (!state.occupied(from)) {
    throw std::invalid_argument("shortest_direct_path: source not occupied");
  }
  if (state.occupied(to)) {
    throw std::invalid_argument("shortest_direct_path: destination occupied");
  }
  auto route = bfs_route(state, from, to, connectivity,
                         [&](Site s) { return !state.occupied(s); });
  if (!route) return std::nullopt;
  return route_to_path(*route, 0, route->size() - 1, Path::Kind::Direct);
}

std::optional<std::vector<Site>> find_route(const ArrayState& state, Site from,
                                            Site to, const RouteRules& rules) {
  const Species moving = state.at(from);
  auto passable = [&](Site s) {
    if (rules.frozen && rules.frozen(s)) return false;
    const Species sp = state.at(s);
    if (sp == Species::Empty) return true;
    if (!rules.opposite_species_blocks) return true;
    return sp == moving;
  };
  return bfs_route(state, from, to, rules.connectivity, passable);
}

DominoResult domino_decompose(const ArrayState& state, Site from, Site to,
                              SpeciesRule rule, const RouteRules& base_rules) {
  if (!state.occupied(from)) {
    throw std::invalid_argument("domino_decompose: source not occupied");
  }
  if (state.occupied(to)) {
    throw std::invalid_argument("domino_decompose: destination occupied");
  }
  RouteRules rules = base_rules;
  rules.opposite_species_blocks = (rule == SpeciesRule::Dual);
  // The target must stay enterable even when a frozen predicate is set.
  auto route = find_route(state, from, to, rules);
  if (!route) {
    DominoResult res;
    res.status = (rule == SpeciesRule::Dual) ? DominoResult::Status::Blocked
                                             : DominoResult::Status::NoRoute;
    return res;
  }

  // Occupied sites strictly inside the route are the domino obstacles.
  std::vector<std::size_t> obstacle_at;
  for (std::size_t i = 1; i + 1 < route->size(); ++i) {
    if (state.occupied((*route)[i])) obstacle_at.push_back(i);
  }

  DominoResult res;
  res.status = DominoResult::Status::Ok;
  if (obstacle_at.empty()) {
    res.segments.push_back(
        route_to_path(*route, 0, route->size() - 1, Path::Kind::Direct));
    return res;
  }
  // Last obstacle first: it moves into the target, each earlier obstacle
  // then advances into the slot just vacated, and the source goes last.
  std::size_t ahead = route->size() - 1;
  for (auto it = obstacle_at.rbegin(); it != obstacle_at.rend(); ++it) {
    res.segments.push_back(
        route_to_path(*route, *it, ahead, Path::Kind::DominoSegment));
    ahead = *it;
  }
  res.segments.push_back(
      route_to_path(*route, 0, ahead, Path::Kind::DominoSegment));
  return res;
}

bool detect_blocked(const ArrayState& state, Site from, Site to,
                    Connectivity connectivity) {
  if (!state.occupied(from)) {
    throw std::invalid_argument("detect_blocked: source not occupied");
  }
  RouteRules rules;
  rules.connectivity = connectivity;
  rules.opposite_species_blocks = true;
  return !find_route(state, from, to, rules).has_value();
}

}  // namespace atomsort
