#include "tbg/reduction.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace tbg {

namespace {

int sgn(long long x) { return (x > 0) - (x < 0); }
int sign_plus(long long x) { return x >= 0 ? 1 : -1; }
int sign_minus(long long x) { return x > 0 ? 1 : -1; }

long long entry_potential(long long c, int k) { return (2LL * k - 1) - 2 * std::llabs(c); }

}  // namespace

const char* rule_name(RuleId rule) {
  switch (rule) {
    case RuleId::R1: return "R1";
    case RuleId::R2: return "R2";
    case RuleId::R3: return "R3";
    case RuleId::R4: return "R4";
    case RuleId::R5: return "R5";
    case RuleId::R6: return "R6";
  }
  return "?";
}

long long potential(const CoeffWord& word, int k) {
  long long sum = 0;
  for (long long c : word.coeffs) sum += entry_potential(c, k);
  return sum;
}

std::vector<RuleViolation> violations(const CoeffWord& word, int n, int k) {
  if (word.coeffs.empty()) throw std::invalid_argument("violations: empty word");
  if (word.low_degree() != 0)
    throw std::invalid_argument("violations: word must cover degrees m..0");

  int m = word.lead_degree;
  while (m > 0 && word.at_degree(m) == 0) --m;
  if (word.at_degree(m) == 0) return {};

  auto c = [&](int d) { return word.at_degree(d); };
  // Doubled potential of the span of absolute degrees [lo, hi].
  auto pot2 = [&](int hi, int lo) {
    long long sum = 0;
    for (int d = hi; d >= lo; --d) sum += 2 * entry_potential(c(d), k);
    return sum;
  };

  std::vector<RuleViolation> out;

  // Rule 1 (local top): for m >= n.
  if (m >= n) {
    const long long cm = c(m);
    const long long bound = sgn(cm * c(m - 1)) < 0 ? k + 1 : k + 2;
    if (std::llabs(cm) > bound) out.push_back({RuleId::R1, m, m, sgn(cm)});
  }

  // Rule 2 (local non-top): for i = m < n or i < m.
  for (int i = m; i >= 0; --i) {
    if (i == m && m >= n) continue;
    const long long ci = c(i);
    const bool sc_up = sgn(c(i + 1) * ci) < 0;
    const bool sc_dn = sgn(ci * c(i - 1)) < 0;
    const long long bound = (sc_up && sc_dn) ? k - 1 : (sc_up || sc_dn) ? k : k + 1;
    if (std::llabs(ci) > bound) out.push_back({RuleId::R2, i, i, sgn(ci)});
  }

  // Rule 3 (local top): for m > n.
  if (m > n && m >= 1 && std::llabs(c(m)) == 1) {
    const int s = sgn(c(m));
    const long long d1 = s * c(m - 1);
    const bool hit = d1 == -k || (d1 == -k + 1 && sgn(c(m - 1) * c(m - 2)) < 0);
    if (hit) out.push_back({RuleId::R3, m - 1, m - 1, s});
  }

  // Rule 4 (global top): for m > n, i >= 1, lead +-1 then a negative-signed run.
  if (m > n && std::llabs(c(m)) == 1) {
    const int s = sgn(c(m));
    for (int i = 1; i <= m; ++i) {
      bool match = true;
      for (int j = 1; j <= i && match; ++j) {
        const long long v = s * c(m - j);
        if (j == 1 && !(v == -k + 1 || v == -k + 2)) match = false;
        if (j == i && !(v == -k || v == -k - 1)) match = false;
        if (j > 1 && j < i && !(v == -k + 1 || v == -k)) match = false;
      }
      if (!match) continue;
      const long long rhs = 2 + sign_minus(c(m) * c(m - i - 1));
      if (pot2(m - 1, m - i) < rhs) out.push_back({RuleId::R4, m - 1, m - i, s});
    }
  }

  // Rule 5 (global top): for m >= n, lead +-(k+1 or k+2) then a positive-signed run.
  if (m >= n) {
    const int s = sgn(c(m));
    const long long lead = s * c(m);
    if (lead == k + 1 || lead == k + 2) {
      for (int i = 1; i <= m; ++i) {
        bool match = true;
        for (int j = 1; j <= i && match; ++j) {
          const long long v = s * c(m - j);
          if (j == i && !(v == k || v == k + 1)) match = false;
          if (j < i && !(v == k - 1 || v == k)) match = false;
        }
        if (!match) continue;
        const long long rhs = -10 - sign_plus(c(m) * c(m - i - 1));
        if (pot2(m, m - i) < rhs) out.push_back({RuleId::R5, m, m - i, s});
      }
    }
  }

  // Rule 6 (global non-top): interior run bracketed by +-(k or k+1).
  for (int j = 1; j <= m; ++j) {
    if (!(j < m || m < n)) continue;
    const int s = sgn(c(j));
    const long long lead = s * c(j);
    if (!(lead == k || lead == k + 1)) continue;
    for (int l = j - 1; l >= 0; --l) {
      bool match = true;
      const long long vl = s * c(l);
      if (!(vl == k || vl == k + 1)) match = false;
      for (int t = l + 1; t < j && match; ++t) {
        const long long v = s * c(t);
        if (!(v == k - 1 || v == k)) match = false;
      }
      if (!match) continue;
      const long long rhs = -4 - 2 * sign_plus(c(j) * c(j + 1)) - sign_plus(c(j) * c(l - 1));
      if (pot2(j, l) < rhs) out.push_back({RuleId::R6, j, l, s});
    }
  }

  return out;
}

bool is_reduced_word(const CoeffWord& word, int n, int k) {
  return violations(word, n, k).empty();
}

namespace {

CoeffWord poly_word(const LaurentPoly& P) {
  int m = 0;
  if (auto hi = P.highest_degree(); hi && *hi > 0) m = *hi;
  return word_window(P, m, 0);
}

}  // namespace

bool is_reduced_poly(const LaurentPoly& P, int n, int k) {
  if (auto lo = P.lowest_degree(); lo && *lo < 0)
    throw std::invalid_argument("is_reduced_poly: P has a principal part");
  return is_reduced_word(poly_word(P), n, k);
}

bool is_reduced_pair(const LaurentPoly& F, int n, int k) {
  if (!is_reduced_poly(F.polynomial_part(), n, k)) return false;
  return is_reduced_poly(F.principal_part().mirrored(), -n, k);
}

std::optional<RuleViolation> rightmost_minimal_poison(const CoeffWord& word, int n, int k) {
  auto all = violations(word, n, k);
  if (all.empty()) return std::nullopt;

  std::map<std::pair<int, int>, std::vector<RuleViolation>> by_span;
  for (const auto& v : all) by_span[{v.span_high, v.span_low}].push_back(v);
  std::vector<RuleViolation> poisons;
  for (auto& [span, vs] : by_span)
    if (vs.size() == 1) poisons.push_back(vs.front());
  if (poisons.empty())
    throw std::logic_error("rightmost_minimal_poison: every violating span violates several rules");

  auto strictly_contains = [](const RuleViolation& a, const RuleViolation& b) {
    return a.span_high >= b.span_high && a.span_low <= b.span_low &&
           (a.span_high != b.span_high || a.span_low != b.span_low);
  };
  std::optional<RuleViolation> best;
  for (const auto& p : poisons) {
    bool has_inner = false;
    for (const auto& q : poisons)
      if (strictly_contains(p, q)) { has_inner = true; break; }
    if (has_inner) continue;
    if (!best || p.span_high < best->span_high ||
        (p.span_high == best->span_high && p.span_low > best->span_low))
      best = p;
  }
  return best;
}

LaurentPoly apply_rewrite(const LaurentPoly& F, const RuleViolation& v, int n, int k) {
  const GroupParams params(k);
  auto current = violations(poly_word(F.polynomial_part()), n, k);
  if (std::find(current.begin(), current.end(), v) == current.end())
    throw std::invalid_argument("apply_rewrite: not a current violation of the polynomial part");

  LaurentPoly out = F;
  switch (v.rule) {
    case RuleId::R1:
    case RuleId::R2:
      out.add_scaled(relation_shift(params, v.span_high - 1), v.sign);
      break;
    case RuleId::R3:
      out.add_scaled(relation_shift(params, v.span_high - 1), -v.sign);
      break;
    case RuleId::R4:
      out.add_scaled(long_relation(params, v.span_low - 1, v.span_high - v.span_low), v.sign);
      break;
    case RuleId::R5:
    case RuleId::R6:
      out.add_scaled(long_relation(params, v.span_low - 1, v.span_high - v.span_low), -v.sign);
      break;
  }
  return out;
}

namespace {

// Rightmost-poison loop on a plain polynomial (degrees >= 0) at the given
// level. The leftward-progress assertion covers inputs whose local-rule
// violations all touch the increment seat (degrees 0 and 1): words from
// n-minimal representatives plus a bottom increment or spill. Wilder inputs
// (search seeds) only get the termination guard.
LaurentPoly reduce_loop(LaurentPoly work, int level, int k,
                        std::vector<RewriteStep>* trace) {
  bool assert_progress = true;
  for (const auto& v : violations(poly_word(work.polynomial_part()), level, k)) {
    const bool local = v.rule == RuleId::R1 || v.rule == RuleId::R2 || v.rule == RuleId::R3;
    if (local && v.span_high > 1) {
      assert_progress = false;
      break;
    }
  }

  const std::size_t support = work.terms().size();
  const auto abs_sum = static_cast<std::size_t>(work.coefficient_abs_sum());
  const std::size_t step_cap = 64 * (support + abs_sum + 16);

  std::optional<RuleViolation> prev;
  for (std::size_t steps = 0;; ++steps) {
    if (steps > step_cap)
      throw std::logic_error("reduce: step budget exceeded (termination falsification)");
    LaurentPoly poly = work.polynomial_part();
    auto poison = rightmost_minimal_poison(poly_word(poly), level, k);
    if (!poison) break;
    if (assert_progress && prev) {
      if (!(poison->span_high > prev->span_high && poison->span_low > prev->span_low))
        throw std::logic_error("reduce: rightmost poison failed to move left (falsification)");
    }
    LaurentPoly next = work;
    LaurentPoly principal = next.principal_part();
    LaurentPoly rewritten = apply_rewrite(poly, *poison, level, k);
    next = principal;
    next.add_scaled(rewritten);
    if (trace) {
      RewriteStep step;
      step.rule = poison->rule;
      step.span_high = poison->span_high;
      step.span_low = poison->span_low;
      step.before = work;
      step.after = next;
      trace->push_back(std::move(step));
    }
    work = std::move(next);
    prev = poison;
  }
  return work;
}

}  // namespace

LaurentPoly reduce_polynomial_part(const LaurentPoly& F, int n, int k, int r,
                                   std::vector<RewriteStep>* trace) {
  if (r < 0) throw std::invalid_argument("reduce_polynomial_part: r must be >= 0");

  LaurentPoly shifted;
  LaurentPoly tail;
  for (const auto& [deg, cv] : F.terms()) {
    if (deg >= r)
      shifted.add_coeff(deg - r, cv);
    else
      tail.add_coeff(deg, cv);
  }

  std::vector<RewriteStep> local;
  shifted = reduce_loop(std::move(shifted), n - r, k, trace ? &local : nullptr);

  auto reattach = [&](const LaurentPoly& part) {
    LaurentPoly full = tail;
    full.add_scaled(part, 1, r);
    return full;
  };
  if (trace) {
    for (auto& step : local) {
      step.span_high += r;
      step.span_low += r;
      step.before = reattach(step.before);
      step.after = reattach(step.after);
      step.len_before = n_length(step.before, n).length;
      step.len_after = n_length(step.after, n).length;
      trace->push_back(std::move(step));
    }
  }
  return reattach(shifted);
}

LaurentPoly reduce_full(const LaurentPoly& F, int n, int k, std::vector<RewriteStep>* trace) {
  LaurentPoly work = F;
  const std::size_t pass_cap = 4 * (work.terms().size() + 2);
  for (std::size_t pass = 0;; ++pass) {
    if (pass > pass_cap)
      throw std::logic_error("reduce_full: alternation budget exceeded (falsification)");

    LaurentPoly principal_mirror = work.principal_part().mirrored();
    if (!is_reduced_poly(principal_mirror, -n, k)) {
      std::vector<RewriteStep> local;
      LaurentPoly reduced =
          reduce_polynomial_part(principal_mirror, -n, k, 0, trace ? &local : nullptr);
      LaurentPoly next = work.polynomial_part();
      next.add_scaled(reduced.mirrored());
      if (trace) {
        for (auto& step : local) {
          LaurentPoly before_full = work.polynomial_part();
          before_full.add_scaled(step.before.mirrored());
          LaurentPoly after_full = work.polynomial_part();
          after_full.add_scaled(step.after.mirrored());
          const int high = step.span_high, low = step.span_low;
          step.span_high = -low - 1;
          step.span_low = -high - 1;
          step.before = std::move(before_full);
          step.after = std::move(after_full);
          step.len_before = n_length(step.before, n).length;
          step.len_after = n_length(step.after, n).length;
          trace->push_back(std::move(step));
        }
      }
      work = std::move(next);
      continue;
    }

    if (!is_reduced_poly(work.polynomial_part(), n, k)) {
      work = reduce_polynomial_part(work, n, k, 0, trace);
      continue;
    }
    break;
  }
  return work;
}

namespace {

long long small_coeff(const Int& v) {
  if (v < std::numeric_limits<long long>::min() || v > std::numeric_limits<long long>::max())
    throw std::overflow_error("minimal_representative_search: coordinate out of range");
  return v.convert_to<long long>();
}

}  // namespace

MinimalRepResult minimal_representative_search(const GroupParams& params, const Vec2& x, int n,
                                               std::size_t budget) {
  LaurentPoly seed;
  seed.add_coeff(-1, small_coeff(x.x0));
  seed.add_coeff(0, small_coeff(x.x1));

  MinimalRepResult result;
  LaurentPoly start = reduce_full(seed, n, params.k);
  result.rep = start;
  result.length = n_length(start, n).length;

  constexpr long long kSlack = 3;
  std::set<LaurentPoly> visited;
  auto cmp = [n](const LaurentPoly& a, const LaurentPoly& b) {
    return n_length(a, n).length > n_length(b, n).length;
  };
  std::priority_queue<LaurentPoly, std::vector<LaurentPoly>, decltype(cmp)> queue(cmp);
  queue.push(start);
  visited.insert(start);

  bool exhausted = true;
  while (!queue.empty()) {
    if (visited.size() >= budget) {
      exhausted = false;
      break;
    }
    LaurentPoly cur = queue.top();
    queue.pop();
    const long long cur_len = n_length(cur, n).length;
    if (cur_len < result.length) {
      result.length = cur_len;
      result.rep = cur;
    }
    if (cur_len > result.length + kSlack) continue;

    int lo = -2, hi = 1;
    if (!cur.is_zero()) {
      lo = std::min(lo, *cur.lowest_degree() - 2);
      hi = std::max(hi, *cur.highest_degree() + 1);
    }
    for (int d = lo; d <= hi; ++d) {
      for (int s : {1, -1}) {
        LaurentPoly neighbor = cur;
        neighbor.add_scaled(relation_shift(params, d), s);
        for (const LaurentPoly& cand : {neighbor, reduce_full(neighbor, n, params.k)}) {
          if (n_length(cand, n).length > result.length + kSlack) continue;
          if (visited.insert(cand).second) queue.push(cand);
        }
      }
    }
  }
  result.verified = exhausted;
  return result;
}

}  // namespace tbg
