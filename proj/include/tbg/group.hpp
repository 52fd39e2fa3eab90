#pragma once

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace tbg {

using Int = boost::multiprecision::cpp_int;

/// Parameters of the torus bundle group G = Z^2 x|_T Z with monodromy
/// T = [[0,-1],[1,2k+1]], presented by <a,b,t | [a,b], a^t = b, b^t = a^-1 b^(2k+1)>.
struct GroupParams {
  int k;

  explicit GroupParams(int k_) : k(k_) {
    if (k < 2) throw std::invalid_argument("GroupParams: k must be >= 2");
  }

  /// Trace of the monodromy matrix, d = 2k+1 >= 5.
  int d() const { return 2 * k + 1; }
};

/// Fiber coordinates in the basis (a, b).
struct Vec2 {
  Int x0;
  Int x1;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend auto operator<=>(const Vec2&, const Vec2&) = default;
};

/// Group element (x, t^n) with x in the fiber Z^2.
struct GroupElement {
  Vec2 x;
  Int n;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

  /// Lexicographic order on (n, x0, x1); canonical order for output and golden files.
  friend bool operator<(const GroupElement& lhs, const GroupElement& rhs) {
    if (lhs.n != rhs.n) return lhs.n < rhs.n;
    if (lhs.x.x0 != rhs.x.x0) return lhs.x.x0 < rhs.x.x0;
    return lhs.x.x1 < rhs.x.x1;
  }
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const {
    std::size_t seed = boost::hash<Int>{}(g.n);
    boost::hash_combine(seed, boost::hash<Int>{}(g.x.x0));
    boost::hash_combine(seed, boost::hash<Int>{}(g.x.x1));
    return seed;
  }
};

/// Word-metric ball computed by breadth-first search over {a, a^-1, b, b^-1, t, t^-1}.
struct BallTable {
  int k = 0;
  int radius = 0;
  std::vector<long long> sphere_sizes;
  std::vector<long long> ball_sizes;
  std::unordered_map<GroupElement, int, GroupElementHash> distances;
};

/// Applies T^m to x exactly; negative m uses T^-1 = [[2k+1,1],[-1,0]].
Vec2 t_action(const GroupParams& params, const Vec2& x, long long m);

GroupElement identity_element();

/// Semidirect product law (x, t^n)(y, t^m) = (x + T^n y, t^(n+m)).
GroupElement multiply(const GroupParams& params, const GroupElement& g, const GroupElement& h);

GroupElement invert(const GroupParams& params, const GroupElement& g);

/// Standard generators in BFS expansion order: a, a^-1, b, b^-1, t, t^-1.
std::vector<GroupElement> standard_generators();

/// Exact word-metric ball of the given radius. Throws std::length_error if the
/// visited set would exceed max_visited.
BallTable bfs_ball(const GroupParams& params, int radius,
                   std::size_t max_visited = 10'000'000);

}  // namespace tbg
