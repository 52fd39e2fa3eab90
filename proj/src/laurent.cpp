#include "tbg/laurent.hpp"

#include <algorithm>
#include <cstdlib>

namespace tbg {

LaurentPoly LaurentPoly::monomial(int degree, long long coeff) {
  LaurentPoly p;
  p.set_coeff(degree, coeff);
  return p;
}

long long LaurentPoly::coeff(int degree) const {
  auto it = coeffs_.find(degree);
  return it == coeffs_.end() ? 0 : it->second;
}

void LaurentPoly::set_coeff(int degree, long long value) {
  if (value == 0)
    coeffs_.erase(degree);
  else
    coeffs_[degree] = value;
}

void LaurentPoly::add_coeff(int degree, long long value) {
  set_coeff(degree, coeff(degree) + value);
}

void LaurentPoly::add_scaled(const LaurentPoly& other, long long scale, int shift) {
  if (scale == 0) return;
  for (const auto& [deg, c] : other.coeffs_) add_coeff(deg + shift, scale * c);
}

std::optional<int> LaurentPoly::lowest_degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.begin()->first;
}

std::optional<int> LaurentPoly::highest_degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.rbegin()->first;
}

LaurentPoly LaurentPoly::polynomial_part() const {
  LaurentPoly p;
  for (const auto& [deg, c] : coeffs_)
    if (deg >= 0) p.coeffs_.emplace(deg, c);
  return p;
}

LaurentPoly LaurentPoly::principal_part() const {
  LaurentPoly p;
  for (const auto& [deg, c] : coeffs_)
    if (deg < 0) p.coeffs_.emplace(deg, c);
  return p;
}

LaurentPoly LaurentPoly::mirrored() const {
  LaurentPoly p;
  for (const auto& [deg, c] : coeffs_) p.coeffs_.emplace(-deg - 1, c);
  return p;
}

LaurentPoly LaurentPoly::negated() const {
  LaurentPoly p;
  for (const auto& [deg, c] : coeffs_) p.coeffs_.emplace(deg, -c);
  return p;
}

long long LaurentPoly::coefficient_abs_sum() const {
  long long sum = 0;
  for (const auto& [deg, c] : coeffs_) sum += std::llabs(c);
  return sum;
}

CoeffWord word_window(const LaurentPoly& F, int hi, int lo) {
  CoeffWord w;
  w.lead_degree = hi;
  w.coeffs.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int d = hi; d >= lo; --d) w.coeffs.push_back(F.coeff(d));
  return w;
}

Vec2 evaluate_rep(const GroupParams& params, const LaurentPoly& F) {
  Vec2 acc{0, 0};
  if (F.is_zero()) return acc;
  const int lo = *F.lowest_degree();
  const int hi = *F.highest_degree();
  Vec2 power = t_action(params, Vec2{0, 1}, lo);
  for (int d = lo; d <= hi; ++d) {
    if (long long c = F.coeff(d); c != 0) {
      acc.x0 += c * power.x0;
      acc.x1 += c * power.x1;
    }
    if (d < hi) power = t_action(params, power, 1);
  }
  return acc;
}

NLengthResult n_length(const LaurentPoly& F, int n) {
  NLengthBounds b;
  b.p = std::max(0, -n);
  b.q = std::max(0, n);
  if (!F.is_zero()) {
    const int lo = *F.lowest_degree();
    const int hi = *F.highest_degree();
    b.p = std::max(b.p, -lo - 1);
    b.q = std::max(b.q, hi);
  }
  NLengthResult result;
  result.bounds = b;
  result.length = 2LL * b.p + 2LL * b.q - std::abs(n) + F.coefficient_abs_sum();
  return result;
}

LaurentPoly relation_shift(const GroupParams& params, int d) {
  LaurentPoly rel;
  rel.set_coeff(d + 2, 1);
  rel.set_coeff(d + 1, -params.d());
  rel.set_coeff(d, 1);
  return rel;
}

LaurentPoly long_relation(const GroupParams& params, int d, int run) {
  if (run < 0) throw std::invalid_argument("long_relation: run must be >= 0");
  LaurentPoly rel;
  for (int j = 0; j <= run; ++j) rel.add_scaled(relation_shift(params, d + j), -1);
  return rel;
}

}  // namespace tbg
