#pragma once

// Dense univariate polynomials in q over arbitrary-precision integers.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qkoshy/errors.hpp"

namespace qkoshy {

using Integer = mpz_class;

class IntPolynomial;

/// Raised by exact_div when the long-division remainder is nonzero.
class DivisionInexact : public Error {
 public:
  explicit DivisionInexact(std::vector<Integer> remainder)
      : Error("polynomial division is not exact"), remainder_(std::move(remainder)) {}
  /// Remainder coefficients in ascending order (canonical, nonempty).
  const std::vector<Integer>& remainder_coeffs() const noexcept { return remainder_; }

 private:
  std::vector<Integer> remainder_;
};

/**
 * Polynomial with ascending coefficient storage: coeffs()[i] multiplies q^i.
 *
 * Always canonical: the last stored coefficient is nonzero, or nothing is
 * stored (the zero polynomial). Values are immutable once built except
 * through the arithmetic operators, which keep the canonical form.
 */
class IntPolynomial {
 public:
  /// Degree reported for the zero polynomial.
  static constexpr long kZeroDegree = std::numeric_limits<long>::min();

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  IntPolynomial(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static IntPolynomial constant(const Integer& c) { return IntPolynomial(std::vector<Integer>{c}); }
  /// c * q^k
  static IntPolynomial monomial(std::size_t k, const Integer& c = 1) {
    std::vector<Integer> v(k + 1);
    v[k] = c;
    return IntPolynomial(std::move(v));
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  long degree() const noexcept {
    return coeffs_.empty() ? kZeroDegree : static_cast<long>(coeffs_.size()) - 1;
  }
  /// Lowest power with a nonzero coefficient; kZeroDegree for zero.
  long low_degree() const noexcept {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (sgn(coeffs_[i]) != 0) return static_cast<long>(i);
    return kZeroDegree;
  }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<const Integer> coeffs() const noexcept { return coeffs_; }

  Integer coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
  const Integer& leading() const { return coeffs_.back(); }

  Integer evaluate(const Integer& x) const {
    Integer acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  IntPolynomial& operator+=(const IntPolynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    trim();
    return *this;
  }
  IntPolynomial& operator-=(const IntPolynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    trim();
    return *this;
  }
  IntPolynomial& operator*=(const Integer& c) {
    if (sgn(c) == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator-(IntPolynomial a) {
    for (auto& x : a.coeffs_) x = -x;
    return a;
  }
  friend IntPolynomial operator*(IntPolynomial a, const Integer& c) { return a *= c; }
  friend IntPolynomial operator*(const Integer& c, IntPolynomial a) { return a *= c; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
  }

  std::vector<Integer> coeffs_;
};

// Schoolbook product on raw mpz limbs. Degrees in this project stay below
// ~10^4, where this is adequate.
inline IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs_;
  const auto& y = b.coeffs_;
  std::vector<Integer> out(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    mpz_srcptr xi = x[i].get_mpz_t();
    for (std::size_t j = 0; j < y.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), xi, y[j].get_mpz_t());
    }
  }
  return IntPolynomial(std::move(out));
}

enum class ArithOp { add, sub, mul };

inline IntPolynomial arith(const IntPolynomial& a, const IntPolynomial& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
  }
  return {};
}

enum class TransformKind { shift, power_substitute, negate_variable };

/// Multiply by q^k.
inline IntPolynomial shift(const IntPolynomial& a, std::size_t k) {
  if (a.is_zero() || k == 0) return a;
  std::vector<Integer> v(k + a.size());
  std::copy(a.coeffs().begin(), a.coeffs().end(), v.begin() + static_cast<std::ptrdiff_t>(k));
  return IntPolynomial(std::move(v));
}

/// q -> q^k
inline IntPolynomial power_substitute(const IntPolynomial& a, std::size_t k) {
  if (a.is_zero() || k == 1) return a;
  if (k == 0) {
    Integer s = 0;
    for (const auto& c : a.coeffs()) s += c;
    return IntPolynomial::constant(s);
  }
  std::vector<Integer> v(k * (a.size() - 1) + 1);
  for (std::size_t i = 0; i < a.size(); ++i) v[k * i] = a.coeffs()[i];
  return IntPolynomial(std::move(v));
}

/// q -> -q
inline IntPolynomial negate_variable(const IntPolynomial& a) {
  std::vector<Integer> v(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
  return IntPolynomial(std::move(v));
}

inline IntPolynomial transform(const IntPolynomial& a, TransformKind kind, std::size_t k = 1) {
  switch (kind) {
    case TransformKind::shift: return shift(a, k);
    case TransformKind::power_substitute: return power_substitute(a, k);
    case TransformKind::negate_variable: return negate_variable(a);
  }
  return a;
}

/// Long division by a divisor with leading coefficient +-1.
/// Returns {quotient, remainder}.
inline std::pair<IntPolynomial, IntPolynomial> divide_unit_leading(const IntPolynomial& a,
                                                                   const IntPolynomial& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  const bool lead_pos = b.leading() == 1;
  if (!lead_pos && b.leading() != -1) throw UnsupportedDivisor();
  if (a.degree() < b.degree()) return {IntPolynomial{}, a};

  std::vector<Integer> rem(a.coeffs().begin(), a.coeffs().end());
  const std::size_t db = static_cast<std::size_t>(b.degree());
  const std::size_t dq = rem.size() - 1 - db;
  std::vector<Integer> quot(dq + 1);
  auto bc = b.coeffs();
  Integer t;
  for (std::size_t k = dq + 1; k-- > 0;) {
    Integer& top = rem[k + db];
    if (sgn(top) == 0) continue;
    t = lead_pos ? top : Integer(-top);
    quot[k] = t;
    mpz_srcptr tp = t.get_mpz_t();
    for (std::size_t i = 0; i < db; ++i) {
      if (sgn(bc[i]) != 0) mpz_submul(rem[k + i].get_mpz_t(), tp, bc[i].get_mpz_t());
    }
    top = 0;
  }
  rem.resize(db);
  return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
}

/// Exact quotient a / b. Throws DivisionInexact carrying the remainder.
inline IntPolynomial exact_div(const IntPolynomial& a, const IntPolynomial& b) {
  auto [quot, rem] = divide_unit_leading(a, b);
  if (!rem.is_zero()) {
    throw DivisionInexact(std::vector<Integer>(rem.coeffs().begin(), rem.coeffs().end()));
  }
  return quot;
}

inline bool divides(const IntPolynomial& b, const IntPolynomial& a) {
  return divide_unit_leading(a, b).second.is_zero();
}

/// a mod m for monic m.
inline IntPolynomial poly_remainder(const IntPolynomial& a, const IntPolynomial& m) {
  if (m.degree() < 1 || m.leading() != 1) throw NonMonicModulus();
  return divide_unit_leading(a, m).second;
}

/// a * (1 + sign*q^k), linear time.
inline IntPolynomial mul_one_plus(const IntPolynomial& a, int sign, std::size_t k) {
  if (a.is_zero()) return a;
  std::vector<Integer> v(a.size() + k);
  auto c = a.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) v[i] = c[i];
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sign > 0)
      v[i + k] += c[i];
    else
      v[i + k] -= c[i];
  }
  return IntPolynomial(std::move(v));
}

/// a / (1 + sign*q^k) for k >= 1, linear time. Throws DivisionInexact if not exact.
inline IntPolynomial div_one_plus(const IntPolynomial& a, int sign, std::size_t k) {
  if (k == 0) throw DomainError("div_one_plus requires k >= 1");
  const IntPolynomial divisor = mul_one_plus(IntPolynomial{1}, sign, k);
  if (a.is_zero()) return a;
  if (a.degree() < static_cast<long>(k)) return exact_div(a, divisor);
  auto c = a.coeffs();
  const std::size_t dq = c.size() - 1 - k;
  std::vector<Integer> quot(dq + 1);
  for (std::size_t i = 0; i <= dq; ++i) {
    quot[i] = c[i];
    if (i >= k) {
      if (sign > 0)
        quot[i] -= quot[i - k];
      else
        quot[i] += quot[i - k];
    }
  }
  // coefficients above the quotient degree must cancel
  for (std::size_t i = dq + 1; i < c.size(); ++i) {
    bool cancels;
    if (i < k)
      cancels = sgn(c[i]) == 0;
    else
      cancels = sign > 0 ? c[i] == quot[i - k] : c[i] == -quot[i - k];
    if (!cancels) return exact_div(a, divisor);
  }
  return IntPolynomial(std::move(quot));
}

/// Coefficient-shape facts evaluated on the support window [low_degree, degree].
struct Shape {
  bool is_nonnegative = true;
  bool is_reciprocal = true;
  bool is_unimodal = true;
  long nonneg_prefix_degree = IntPolynomial::kZeroDegree;
  /// Power of q where the coefficient first rises again after a strict fall.
  std::optional<long> first_unimodal_violation;
};

inline Shape shape(const IntPolynomial& a) {
  Shape s;
  if (a.is_zero()) return s;
  auto c = a.coeffs();
  const long deg = a.degree();
  s.nonneg_prefix_degree = deg;
  for (long i = 0; i <= deg; ++i) {
    if (sgn(c[static_cast<std::size_t>(i)]) < 0) {
      s.is_nonnegative = false;
      s.nonneg_prefix_degree = i - 1;
      break;
    }
  }
  const long low = a.low_degree();
  for (long i = low, j = deg; i < j; ++i, --j) {
    if (c[static_cast<std::size_t>(i)] != c[static_cast<std::size_t>(j)]) {
      s.is_reciprocal = false;
      break;
    }
  }
  bool falling = false;
  for (long i = low + 1; i <= deg; ++i) {
    int cmp_prev = cmp(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(i - 1)]);
    if (cmp_prev < 0) {
      falling = true;
    } else if (cmp_prev > 0 && falling) {
      s.is_unimodal = false;
      s.first_unimodal_violation = i;
      break;
    }
  }
  return s;
}

/// Rendering in ascending powers, e.g. "1 + q + 2*q^2"; zero renders "0".
inline std::string to_string(const IntPolynomial& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto c = a.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    Integer mag = abs(c[i]);
    const bool neg = sgn(c[i]) < 0;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << 'q';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const IntPolynomial& a) { return os << to_string(a); }

/// num / den, never normalized. Equality is by cross-multiplication.
struct RationalForm {
  IntPolynomial num;
  IntPolynomial den{1};

  RationalForm() = default;
  RationalForm(IntPolynomial n, IntPolynomial d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw DomainError("rational form with zero denominator");
  }
  explicit RationalForm(IntPolynomial n) : num(std::move(n)) {}
};

inline bool rational_equal(const RationalForm& x, const RationalForm& y) {
  return x.num * y.den == y.num * x.den;
}

}  // namespace qkoshy
