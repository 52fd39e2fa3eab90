#pragma once

#include "tbg/laurent.hpp"

#include <optional>
#include <vector>

namespace tbg {

enum class RuleId { R1, R2, R3, R4, R5, R6 };

const char* rule_name(RuleId rule);

/// A rule violation. The span [span_low, span_high] (absolute degrees) is the
/// subword associated to the rule: the coefficient in question for the local
/// rules R1/R2 (R3 records the degree below the leading 1), and the potential
/// span for the global rules R4 (lead excluded), R5 and R6.
struct RuleViolation {
  RuleId rule;
  int span_high = 0;
  int span_low = 0;
  int sign = 1;

  friend bool operator==(const RuleViolation&, const RuleViolation&) = default;
};

/// Sum over entries of (2k-1) - 2|c_j|; additive under concatenation.
long long potential(const CoeffWord& word, int k);

/// All rule violations of a polynomial-part word (low degree 0, highest
/// degree m after trimming leading zeros). Out-of-range neighbors read as 0.
std::vector<RuleViolation> violations(const CoeffWord& word, int n, int k);

bool is_reduced_word(const CoeffWord& word, int n, int k);

/// Is a polynomial (no principal part) n-reduced?
bool is_reduced_poly(const LaurentPoly& P, int n, int k);

/// Are both parts of F reduced (polynomial part at level n, mirrored principal
/// part at level -n)?
bool is_reduced_pair(const LaurentPoly& F, int n, int k);

/// Among spans violating exactly one rule, keep those minimal under inclusion
/// and return the one with smallest leading degree. Empty iff the word is
/// n-reduced.
std::optional<RuleViolation> rightmost_minimal_poison(const CoeffWord& word, int n, int k);

/// One rewriting step for a reported violation; adds the signed relation ideal
/// element dictated by the rule. evaluate_rep is unchanged and n_length never
/// increases. Throws if v is not a current violation of F's polynomial part.
LaurentPoly apply_rewrite(const LaurentPoly& F, const RuleViolation& v, int n, int k);

/// Trace record of one rewriting step (CLI --trace and diagnostics).
struct RewriteStep {
  RuleId rule;
  int span_high = 0;
  int span_low = 0;
  LaurentPoly before;
  LaurentPoly after;
  long long len_before = 0;
  long long len_after = 0;
};

/// Rightmost-poison iteration on the part of F with degrees >= r, holding
/// everything below fixed except the single spill coefficient at degree r-1.
/// Degrees >= r of the result are n-reduced.
LaurentPoly reduce_polynomial_part(const LaurentPoly& F, int n, int k, int r,
                                   std::vector<RewriteStep>* trace = nullptr);

/// Reduces both parts: principal part first (mirrored, level -n), then the
/// polynomial part, then again whenever the degree -1 / degree 0 spill made
/// the other part non-reduced. Same group element, n_length non-increasing.
LaurentPoly reduce_full(const LaurentPoly& F, int n, int k,
                        std::vector<RewriteStep>* trace = nullptr);

struct MinimalRepResult {
  LaurentPoly rep;
  long long length = 0;
  bool verified = false;
};

/// Bounded search for an n-minimal representative of the fiber element x:
/// seeds with x = r a + s b as r X^-1 + s, then explores relation-ideal
/// neighbors around reduce_full contractions. verified = the search space
/// within the final length band was exhausted inside the budget.
MinimalRepResult minimal_representative_search(const GroupParams& params, const Vec2& x, int n,
                                               std::size_t budget = 20000);

}  // namespace tbg
