#include "tbg/group.hpp"

#include <deque>
#include <limits>
#include <utility>

namespace tbg {

Vec2 t_action(const GroupParams& params, const Vec2& x, long long m) {
  const int d = params.d();
  Vec2 v = x;
  if (m >= 0) {
    for (long long i = 0; i < m; ++i) {
      Vec2 next{-v.x1, v.x0 + d * v.x1};
      v = std::move(next);
    }
  } else {
    for (long long i = 0; i > m; --i) {
      Vec2 next{d * v.x0 + v.x1, -v.x0};
      v = std::move(next);
    }
  }
  return v;
}

GroupElement identity_element() { return GroupElement{{0, 0}, 0}; }

namespace {

long long to_small(const Int& n) {
  if (n < std::numeric_limits<long long>::min() || n > std::numeric_limits<long long>::max())
    throw std::overflow_error("t-exponent out of supported range");
  return n.convert_to<long long>();
}

}  // namespace

GroupElement multiply(const GroupParams& params, const GroupElement& g, const GroupElement& h) {
  Vec2 shifted = t_action(params, h.x, to_small(g.n));
  return GroupElement{{g.x.x0 + shifted.x0, g.x.x1 + shifted.x1}, g.n + h.n};
}

GroupElement invert(const GroupParams& params, const GroupElement& g) {
  Vec2 shifted = t_action(params, g.x, to_small(-g.n));
  return GroupElement{{-shifted.x0, -shifted.x1}, -g.n};
}

std::vector<GroupElement> standard_generators() {
  return {
      GroupElement{{1, 0}, 0},  GroupElement{{-1, 0}, 0},
      GroupElement{{0, 1}, 0},  GroupElement{{0, -1}, 0},
      GroupElement{{0, 0}, 1},  GroupElement{{0, 0}, -1},
  };
}

BallTable bfs_ball(const GroupParams& params, int radius, std::size_t max_visited) {
  if (radius < 0) throw std::invalid_argument("bfs_ball: radius must be >= 0");

  BallTable table;
  table.k = params.k;
  table.radius = radius;

  // Fiber generator images T^n(e0), T^n(e1) cached per t-exponent reached.
  std::unordered_map<long long, std::pair<Vec2, Vec2>> columns;
  auto columns_at = [&](long long n) -> const std::pair<Vec2, Vec2>& {
    auto it = columns.find(n);
    if (it == columns.end()) {
      it = columns
               .emplace(n, std::pair<Vec2, Vec2>{t_action(params, Vec2{1, 0}, n),
                                                 t_action(params, Vec2{0, 1}, n)})
               .first;
    }
    return it->second;
  };

  std::deque<GroupElement> frontier{identity_element()};
  table.distances.emplace(identity_element(), 0);
  table.sphere_sizes.assign(static_cast<std::size_t>(radius) + 1, 0);
  table.sphere_sizes[0] = 1;

  for (int r = 1; r <= radius; ++r) {
    std::deque<GroupElement> next;
    for (const GroupElement& g : frontier) {
      const long long n = to_small(g.n);
      const auto& [col_a, col_b] = columns_at(n);
      GroupElement candidates[6] = {
          GroupElement{{g.x.x0 + col_a.x0, g.x.x1 + col_a.x1}, g.n},
          GroupElement{{g.x.x0 - col_a.x0, g.x.x1 - col_a.x1}, g.n},
          GroupElement{{g.x.x0 + col_b.x0, g.x.x1 + col_b.x1}, g.n},
          GroupElement{{g.x.x0 - col_b.x0, g.x.x1 - col_b.x1}, g.n},
          GroupElement{g.x, g.n + 1},
          GroupElement{g.x, g.n - 1},
      };
      for (auto& cand : candidates) {
        if (table.distances.size() >= max_visited)
          throw std::length_error("bfs_ball: visited-set budget exceeded");
        auto [it, inserted] = table.distances.emplace(std::move(cand), r);
        if (inserted) next.push_back(it->first);
      }
    }
    table.sphere_sizes[r] = static_cast<long long>(next.size());
    frontier = std::move(next);
  }

  table.ball_sizes.resize(table.sphere_sizes.size());
  long long running = 0;
  for (std::size_t i = 0; i < table.sphere_sizes.size(); ++i) {
    running += table.sphere_sizes[i];
    table.ball_sizes[i] = running;
  }
  return table;
}

}  // namespace tbg
