#pragma once

#include "tbg/group.hpp"

#include <map>
#include <optional>
#include <vector>

namespace tbg {

/// Finitely supported Laurent polynomial over Z with no stored zero coefficients.
/// Degrees >= 0 form the polynomial part, degrees <= -1 the principal part.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly monomial(int degree, long long coeff);
  static LaurentPoly constant(long long coeff) { return monomial(0, coeff); }

  long long coeff(int degree) const;
  void set_coeff(int degree, long long value);
  void add_coeff(int degree, long long value);

  /// F += scale * X^shift * other.
  void add_scaled(const LaurentPoly& other, long long scale = 1, int shift = 0);

  bool is_zero() const { return coeffs_.empty(); }
  std::optional<int> lowest_degree() const;
  std::optional<int> highest_degree() const;

  LaurentPoly polynomial_part() const;
  LaurentPoly principal_part() const;

  /// Mirror F(X) -> X^-1 F(X^-1); an involution swapping the two parts.
  LaurentPoly mirrored() const;

  LaurentPoly negated() const;

  long long coefficient_abs_sum() const;

  const std::map<int, long long>& terms() const { return coeffs_; }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
  friend bool operator<(const LaurentPoly& lhs, const LaurentPoly& rhs) {
    return lhs.coeffs_ < rhs.coeffs_;
  }

 private:
  std::map<int, long long> coeffs_;
};

/// Dense coefficient window (c_m, ..., c_low) in descending degree.
struct CoeffWord {
  int lead_degree = 0;
  std::vector<long long> coeffs;

  int low_degree() const { return lead_degree - static_cast<int>(coeffs.size()) + 1; }

  /// Coefficient at absolute degree d; degrees outside the window read as 0.
  long long at_degree(int d) const {
    int idx = lead_degree - d;
    if (idx < 0 || idx >= static_cast<int>(coeffs.size())) return 0;
    return coeffs[static_cast<std::size_t>(idx)];
  }
};

/// Dense view of F over absolute degrees [lo, hi], zeros included.
CoeffWord word_window(const LaurentPoly& F, int hi, int lo);

/// Trimmed exponent extents for the n-length functional.
struct NLengthBounds {
  int p = 0;
  int q = 0;
};

struct NLengthResult {
  long long length = 0;
  NLengthBounds bounds;
};

/// x = F(T)(b), evaluated exactly.
Vec2 evaluate_rep(const GroupParams& params, const LaurentPoly& F);

/// L_n(F) = 2p + 2q - |n| + sum |c_j| with the unique trimmed bounds p, q.
NLengthResult n_length(const LaurentPoly& F, int n);

/// X^d (X^2 - (2k+1) X + 1), the shifted defining relation.
LaurentPoly relation_shift(const GroupParams& params, int d);

/// -X^d (1 + X + ... + X^run)(X^2 - (2k+1)X + 1); coefficient string
/// (-1, 2k, 2k-1, ..., 2k-1, 2k, -1) with run-1 middle entries, spanning
/// degrees d+run+2 down to d.
LaurentPoly long_relation(const GroupParams& params, int d, int run);

}  // namespace tbg
