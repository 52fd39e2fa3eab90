#include "tbg/polyt.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <utility>

namespace tbg {

namespace {

Int int_gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (!b.is_zero()) {
    Int r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

PolyT PolyT::monomial(int exponent, Int coefficient) {
  if (exponent < 0) throw std::invalid_argument("negative exponent in PolyT");
  PolyT p;
  if (!coefficient.is_zero()) p.coeffs_.emplace(exponent, std::move(coefficient));
  return p;
}

int PolyT::degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

Int PolyT::coeff(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? Int(0) : it->second;
}

void PolyT::add_coeff(int exponent, const Int& value) {
  if (value.is_zero()) return;
  if (exponent < 0) throw std::invalid_argument("negative exponent in PolyT");
  auto [it, inserted] = coeffs_.try_emplace(exponent, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

PolyT& PolyT::operator+=(const PolyT& other) {
  for (const auto& [e, c] : other.coeffs_) add_coeff(e, c);
  return *this;
}

PolyT& PolyT::operator-=(const PolyT& other) {
  for (const auto& [e, c] : other.coeffs_) add_coeff(e, -c);
  return *this;
}

PolyT operator*(const PolyT& a, const PolyT& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
  // Dense accumulation avoids the map churn of schoolbook products once the
  // operands carry more than a handful of terms each.
  if (a.coeffs_.size() > 16 && b.coeffs_.size() > 16) {
    const int deg = a.degree() + b.degree();
    std::vector<Int> acc(static_cast<size_t>(deg) + 1);
    for (const auto& [ea, ca] : a.coeffs_)
      for (const auto& [eb, cb] : b.coeffs_) acc[static_cast<size_t>(ea + eb)] += ca * cb;
    PolyT out;
    for (int e = 0; e <= deg; ++e)
      if (!acc[static_cast<size_t>(e)].is_zero())
        out.coeffs_.emplace_hint(out.coeffs_.end(), e, std::move(acc[static_cast<size_t>(e)]));
    return out;
  }
  PolyT out;
  for (const auto& [ea, ca] : a.coeffs_)
    for (const auto& [eb, cb] : b.coeffs_) out.add_coeff(ea + eb, ca * cb);
  return out;
}

PolyT PolyT::negated() const {
  PolyT out;
  for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(e, -c);
  return out;
}

PolyT PolyT::shifted(int by) const {
  PolyT out;
  for (const auto& [e, c] : coeffs_) {
    if (e + by < 0) throw std::invalid_argument("shift below t^0");
    out.coeffs_.emplace(e + by, c);
  }
  return out;
}

PolyT PolyT::divided_exact(const PolyT& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("division by zero polynomial");
  PolyT rem = *this;
  PolyT quot;
  const int dd = divisor.degree();
  const Int& lead = divisor.coeffs_.rbegin()->second;
  while (!rem.is_zero() && rem.degree() >= dd) {
    const auto& top = *rem.coeffs_.rbegin();
    if (Int(top.second % lead) != 0)
      throw std::domain_error("polynomial division is not exact");
    Int q = top.second / lead;
    int shift = top.first - dd;
    quot.add_coeff(shift, q);
    for (const auto& [e, c] : divisor.coeffs_) rem.add_coeff(e + shift, -q * c);
  }
  if (!rem.is_zero()) throw std::domain_error("polynomial division is not exact");
  return quot;
}

Int PolyT::content() const {
  Int g = 0;
  for (const auto& [e, c] : coeffs_) g = int_gcd(g, c);
  return g;
}

Int PolyT::leading_coeff() const {
  return coeffs_.empty() ? Int(0) : coeffs_.rbegin()->second;
}

std::vector<Int> PolyT::coefficients_ascending() const {
  std::vector<Int> out(static_cast<size_t>(degree() + 1), Int(0));
  for (const auto& [e, c] : coeffs_) out[static_cast<size_t>(e)] = c;
  return out;
}

std::vector<Int> PolyT::expand(int order) const {
  std::vector<Int> out(static_cast<size_t>(order + 1), Int(0));
  for (const auto& [e, c] : coeffs_)
    if (e <= order) out[static_cast<size_t>(e)] = c;
  return out;
}

PolyT poly_gcd(PolyT a, PolyT b) {
  auto make_primitive = [](PolyT& p) {
    Int c = p.content();
    if (c > 1) p = p.divided_exact(PolyT::monomial(0, c));
    if (p.leading_coeff() < 0) p = p.negated();
  };
  Int content_gcd = int_gcd(a.content(), b.content());
  make_primitive(a);
  make_primitive(b);
  while (!b.is_zero()) {
    // Pseudo-remainder of a by b, then strip content to keep sizes small.
    PolyT rem = a;
    const int db = b.degree();
    const Int lead = b.leading_coeff();
    while (!rem.is_zero() && rem.degree() >= db) {
      int shift = rem.degree() - db;
      Int top = rem.leading_coeff();
      Int g = int_gcd(top, lead);
      Int mul = lead / g;
      Int q = top / g;
      if (mul != 1) rem *= PolyT::monomial(0, mul);
      PolyT sub = b.shifted(shift);
      sub *= PolyT::monomial(0, q);
      rem -= sub;
    }
    make_primitive(rem);
    a = std::move(b);
    b = std::move(rem);
  }
  if (a.is_zero()) return PolyT::monomial(0, content_gcd);
  if (content_gcd.is_zero()) content_gcd = 1;
  return a * PolyT::monomial(0, content_gcd);
}

RationalT::RationalT(PolyT numerator, PolyT denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw std::invalid_argument("zero denominator");
  normalize();
}

void RationalT::normalize() {
  if (num_.is_zero()) {
    den_ = PolyT::one();
    return;
  }
  PolyT g = poly_gcd(num_, den_);
  if (g.degree() > 0 || g.leading_coeff() > 1) {
    num_ = num_.divided_exact(g);
    den_ = den_.divided_exact(g);
  }
  Int g2 = int_gcd(num_.content(), den_.content());
  if (g2 > 1) {
    num_ = num_.divided_exact(PolyT::monomial(0, g2));
    den_ = den_.divided_exact(PolyT::monomial(0, g2));
  }
  if (den_.leading_coeff() < 0) {
    num_ = num_.negated();
    den_ = den_.negated();
  }
}

RationalT& RationalT::operator+=(const RationalT& other) {
  PolyT n = num_ * other.den_ + other.num_ * den_;
  PolyT d = den_ * other.den_;
  *this = RationalT(std::move(n), std::move(d));
  return *this;
}

RationalT& RationalT::operator-=(const RationalT& other) {
  PolyT n = num_ * other.den_ - other.num_ * den_;
  PolyT d = den_ * other.den_;
  *this = RationalT(std::move(n), std::move(d));
  return *this;
}

RationalT operator*(const RationalT& a, const RationalT& b) {
  return RationalT(a.num_ * b.num_, a.den_ * b.den_);
}

std::vector<Int> expand_coeffs(const RationalT& R, int N) {
  if (N < 0) throw std::invalid_argument("negative expansion order");
  const Int d0 = R.denominator().coeff(0);
  if (d0.is_zero())
    throw std::domain_error("denominator has no constant term; no power-series expansion");
  std::vector<Int> num = R.numerator().expand(N);
  std::vector<Int> den = R.denominator().expand(N);
  std::vector<Int> out(static_cast<size_t>(N + 1));
  for (int i = 0; i <= N; ++i) {
    Int acc = num[static_cast<size_t>(i)];
    for (int j = 1; j <= i; ++j) acc -= den[static_cast<size_t>(j)] * out[static_cast<size_t>(i - j)];
    if (Int(acc % d0) != 0)
      throw std::domain_error("power-series coefficients are not integral");
    out[static_cast<size_t>(i)] = acc / d0;
  }
  return out;
}

PolySolve solve_poly_system(std::vector<std::vector<PolyT>> A, std::vector<PolyT> b) {
  const size_t n = A.size();
  if (b.size() != n) throw std::invalid_argument("system shape mismatch");
  for (const auto& row : A)
    if (row.size() != n) throw std::invalid_argument("system shape mismatch");
  const std::vector<std::vector<PolyT>> A0 = A;
  const std::vector<PolyT> b0 = b;

  // Bareiss fraction-free elimination on the augmented matrix.
  PolyT prev = PolyT::one();
  for (size_t p = 0; p < n; ++p) {
    size_t pivot = p;
    while (pivot < n && A[pivot][p].is_zero()) ++pivot;
    if (pivot == n) throw std::domain_error("singular polynomial system");
    if (pivot != p) {
      std::swap(A[pivot], A[p]);
      std::swap(b[pivot], b[p]);
      // A row swap flips the running determinant's sign.
      for (size_t j = 0; j < n; ++j) A[p][j] = A[p][j].negated();
      b[p] = b[p].negated();
    }
    for (size_t i = p + 1; i < n; ++i) {
      for (size_t j = p + 1; j < n; ++j)
        A[i][j] = (A[p][p] * A[i][j] - A[i][p] * A[p][j]).divided_exact(prev);
      b[i] = (A[p][p] * b[i] - A[i][p] * b[p]).divided_exact(prev);
      A[i][p] = PolyT::zero();
    }
    prev = A[p][p];
  }

  // After elimination A[i][j] holds fraction-free entries with A[n-1][n-1]
  // equal to det(A0). Back-substitute so every x_i shares that denominator.
  PolyT det = A[n - 1][n - 1];
  std::vector<PolyT> x(n);
  for (size_t ii = n; ii-- > 0;) {
    PolyT acc = b[ii] * det;
    for (size_t j = ii + 1; j < n; ++j) acc -= A[ii][j] * x[j];
    x[ii] = acc.divided_exact(A[ii][ii]);
  }

  for (size_t i = 0; i < n; ++i) {
    PolyT lhs;
    for (size_t j = 0; j < n; ++j) lhs += A0[i][j] * x[j];
    if (!(lhs == b0[i] * det)) throw std::logic_error("polynomial solve failed verification");
  }
  return PolySolve{std::move(x), std::move(det)};
}

}  // namespace tbg
