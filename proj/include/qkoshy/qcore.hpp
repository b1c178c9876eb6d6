#pragma once

// Named q-objects: q-integers, Gaussian binomials, q-Catalan, Narayana,
// Ballot and q-Ballot numbers, cyclotomic polynomials and the T-terms of
// the alternating q-Catalan expansions.

#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <tuple>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "qkoshy/exactpoly.hpp"

namespace qkoshy {

namespace detail {

/// Read-shared memo table; concurrent lookups take a shared lock.
template <class Key, class Value>
class SharedMemo {
 public:
  template <class Compute>
  Value get(const Key& key, Compute&& compute) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = table_.find(key); it != table_.end()) return it->second;
    }
    Value v = compute();
    std::unique_lock lock(mutex_);
    return table_.try_emplace(key, std::move(v)).first->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<Key, Value> table_;
};

}  // namespace detail

/// Ordinary binomial coefficient; zero outside 0 <= k <= n.
inline Integer binom(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// [n]_q = 1 + q + ... + q^{n-1}
inline IntPolynomial q_int(long n) {
  if (n <= 0) return {};
  return IntPolynomial(std::vector<Integer>(static_cast<std::size_t>(n), Integer(1)));
}

inline IntPolynomial q_factorial(long n) {
  IntPolynomial acc{1};
  for (long i = 2; i <= n; ++i) acc = acc * q_int(i);
  return acc;
}

/// Sign of x in the Pochhammer symbol (x; q)_r with x = +q^a or x = -q^a.
enum class PochSign { plus, minus };

/// (x; q)_r = (1 - x)(1 - qx)...(1 - q^{r-1}x), x = +-q^a.
inline IntPolynomial q_pochhammer(PochSign sign, long a, long r) {
  IntPolynomial acc{1};
  const int factor_sign = sign == PochSign::plus ? -1 : +1;
  for (long i = 0; i < r; ++i) acc = mul_one_plus(acc, factor_sign, static_cast<std::size_t>(a + i));
  return acc;
}

namespace detail {

// [m choose k]_q by the ratio [m,i] = [m,i-1] (1 - q^{m-i+1}) / (1 - q^i); every
// intermediate is itself a Gaussian binomial, so each division is exact.
inline IntPolynomial q_binomial_uncached(long m, long k) {
  IntPolynomial acc{1};
  for (long i = 1; i <= k; ++i) {
    acc = mul_one_plus(acc, -1, static_cast<std::size_t>(m - i + 1));
    acc = div_one_plus(acc, -1, static_cast<std::size_t>(i));
  }
  return acc;
}

inline SharedMemo<std::pair<long, long>, IntPolynomial>& q_binomial_memo() {
  static SharedMemo<std::pair<long, long>, IntPolynomial> memo;
  return memo;
}

}  // namespace detail

/// Gaussian binomial [m choose k]_q; zero for k < 0, k > m or m < 0. Memoized.
inline IntPolynomial q_binomial(long m, long k) {
  if (m < 0 || k < 0 || k > m) return {};
  k = std::min(k, m - k);
  if (k == 0) return IntPolynomial{1};
  return detail::q_binomial_memo().get({m, k}, [&] { return detail::q_binomial_uncached(m, k); });
}

/// Row m of the Pascal triangle via [m,k] = [m-1,k-1] + q^k [m-1,k]. No caching.
inline std::vector<IntPolynomial> q_binomial_pascal_row(long m) {
  std::vector<IntPolynomial> row{IntPolynomial{1}};
  for (long mm = 1; mm <= m; ++mm) {
    std::vector<IntPolynomial> next(static_cast<std::size_t>(mm + 1));
    next.front() = IntPolynomial{1};
    next.back() = IntPolynomial{1};
    for (long k = 1; k < mm; ++k) {
      next[static_cast<std::size_t>(k)] =
          row[static_cast<std::size_t>(k - 1)] + shift(row[static_cast<std::size_t>(k)], static_cast<std::size_t>(k));
    }
    row = std::move(next);
  }
  return row;
}

inline IntPolynomial q_binomial_factorial(long m, long k) {
  if (m < 0 || k < 0 || k > m) return {};
  return exact_div(q_factorial(m), q_factorial(k) * q_factorial(m - k));
}

/// Row m computed left to right by the ratio recurrence; linear work per entry.
inline std::vector<IntPolynomial> q_binomial_row(long m) {
  std::vector<IntPolynomial> row;
  row.reserve(static_cast<std::size_t>(m + 1));
  row.emplace_back(IntPolynomial{1});
  for (long i = 1; i <= m; ++i) {
    if (2 * i > m) {
      row.push_back(row[static_cast<std::size_t>(m - i)]);
      continue;
    }
    IntPolynomial next = mul_one_plus(row.back(), -1, static_cast<std::size_t>(m - i + 1));
    row.push_back(div_one_plus(next, -1, static_cast<std::size_t>(i)));
  }
  return row;
}

// -- Catalan family ----------------------------------------------------------

inline Integer catalan(long n) { return binom(2 * n, n) / (n + 1); }

inline IntPolynomial q_catalan(long n) {
  if (n < 0) return {};
  // [2n choose n] (1 - q) / (1 - q^{n+1})
  return div_one_plus(mul_one_plus(q_binomial(2 * n, n), -1, 1), -1, static_cast<std::size_t>(n + 1));
}

/// N_{n,k} = binom(n,k-1) binom(n,k) / n
inline Integer narayana_number(long n, long k) {
  if (n < 1 || k < 1 || k > n) return 0;
  return binom(n, k - 1) * binom(n, k) / n;
}

/// N_n(q) = sum_k N_{n,k} q^{k-1}; N_0 is taken as zero.
inline IntPolynomial narayana_poly(long n) {
  if (n < 1) return {};
  std::vector<Integer> c(static_cast<std::size_t>(n));
  for (long k = 1; k <= n; ++k) c[static_cast<std::size_t>(k - 1)] = narayana_number(n, k);
  return IntPolynomial(std::move(c));
}

/// B_{n,r} = (r+1)/(2n+r+1) binom(2n+r+1, n)
inline Integer ballot_number(long n, long r) {
  return binom(2 * n + r + 1, n) * (r + 1) / (2 * n + r + 1);
}

enum class QBallotMethod { quotient, difference };

/// B_j(n,q) = [j]_q/[2n+j]_q [2n+j choose n]_q
inline IntPolynomial q_ballot(long j, long n, QBallotMethod method = QBallotMethod::quotient) {
  if (j < 1 || n < 0) throw DomainError("q_ballot requires j >= 1 and n >= 0");
  if (method == QBallotMethod::quotient) {
    return exact_div(q_int(j) * q_binomial(2 * n + j, n), q_int(2 * n + j));
  }
  return q_binomial(2 * n + j - 2, n) - shift(q_binomial(2 * n + j - 2, n - 2), static_cast<std::size_t>(j));
}

// -- cyclotomic --------------------------------------------------------------

namespace detail {
inline SharedMemo<long, IntPolynomial>& cyclotomic_memo() {
  static SharedMemo<long, IntPolynomial> memo;
  return memo;
}
}  // namespace detail

/// Phi_k(q) = (q^k - 1) / prod_{d | k, d < k} Phi_d(q). Memoized.
inline IntPolynomial cyclotomic(long k) {
  if (k < 1) throw DomainError("cyclotomic requires k >= 1");
  return detail::cyclotomic_memo().get(k, [k] {
    IntPolynomial num = IntPolynomial::monomial(static_cast<std::size_t>(k)) - IntPolynomial{1};
    IntPolynomial den{1};
    for (long d = 1; d < k; ++d)
      if (k % d == 0) den = den * cyclotomic(d);
    return exact_div(num, den);
  });
}

/// q-Lucas congruence [m,k]_q == binom(a,r) [b,s]_q (mod Phi_d).
inline bool q_lucas_check(long m, long k, long d) {
  if (d < 2) throw DomainError("q_lucas_check requires d >= 2");
  const long a = m / d, b = m % d, r = k / d, s = k % d;
  const IntPolynomial phi = cyclotomic(d);
  const IntPolynomial lhs = poly_remainder(q_binomial(m, k), phi);
  const IntPolynomial rhs = poly_remainder(binom(a, r) * q_binomial(b, s), phi);
  return lhs == rhs;
}

// -- T-terms -----------------------------------------------------------------

/// Every printed form of T_r^{(j)}(n,q). Forms specific to j = 1 are optional.
struct TTermForms {
  long r = 0, n = 0, j = 1;
  /// Exact polynomial obtained by sequential exact division.
  IntPolynomial value;
  RationalForm general_j;
  std::optional<RationalForm> andrews_rational;
  std::optional<RationalForm> genT;
  /// Undefined at n = 1 because of the 1/[n-1]_q factor.
  std::optional<RationalForm> genT2;
  std::optional<IntPolynomial> tr21;
  /// Three summands for n >= 2r+1, two for 2r-1 <= n <= 2r.
  std::optional<std::vector<IntPolynomial>> tr22_parts;
};

namespace detail {

inline void check_t_domain(long r, long n, long j) {
  if (r < 1 || n < 1 || j < 1) throw DomainError("t_term requires r, n, j >= 1");
  if (n < 2 * r - j) throw DomainError("t_term outside polynomiality domain n >= 2r - j");
}

inline std::size_t q_pow_r(long r) { return static_cast<std::size_t>(r * r - r); }

// q^{r^2-r} [n,r]_{q^2} [2n+j-1-2r, n-1]_q [j]_q / [n]_q with every division
// performed by a factor 1 - q^b. The numerator is kept polynomial at every
// step, so an inexact division can only happen at the final [n]_q.
inline IntPolynomial t_value_uncached(long r, long n, long j) {
  if (r > n) return {};
  IntPolynomial acc = q_binomial(2 * n + j - 1 - 2 * r, n - 1);
  for (long i = 1; i <= r; ++i) {
    acc = mul_one_plus(acc, -1, static_cast<std::size_t>(2 * (n - r + i)));
    acc = div_one_plus(acc, -1, static_cast<std::size_t>(2 * i));
  }
  acc = mul_one_plus(acc, -1, static_cast<std::size_t>(j));
  acc = div_one_plus(acc, -1, static_cast<std::size_t>(n));
  return shift(acc, q_pow_r(r));
}

inline SharedMemo<std::tuple<long, long, long>, IntPolynomial>& t_value_memo() {
  static SharedMemo<std::tuple<long, long, long>, IntPolynomial> memo;
  return memo;
}

}  // namespace detail

/// T_r^{(j)}(n,q) as a polynomial. Throws DomainError outside n >= 2r-j and
/// DivisionInexact if polynomiality fails. Memoized.
inline IntPolynomial t_value(long r, long n, long j = 1) {
  detail::check_t_domain(r, n, j);
  return detail::t_value_memo().get({r, n, j}, [&] { return detail::t_value_uncached(r, n, j); });
}

inline TTermForms t_term(long r, long n, long j = 1) {
  detail::check_t_domain(r, n, j);
  TTermForms f;
  f.r = r;
  f.n = n;
  f.j = j;
  f.value = t_value(r, n, j);
  const std::size_t pw = detail::q_pow_r(r);
  const IntPolynomial nr2 = power_substitute(q_binomial(n, r), 2);
  f.general_j = RationalForm(shift(nr2 * q_binomial(2 * n + j - 1 - 2 * r, n - 1) * q_int(j), pw), q_int(n));
  if (j != 1) return f;

  // q^{r^2-r} (-q^{n-r+1};q)_r / (-q;q)_r [n-r+1, r]_q C_{n-r}(q)
  f.andrews_rational = RationalForm(
      shift(q_pochhammer(PochSign::minus, n - r + 1, r) * q_binomial(n - r + 1, r) *
                q_binomial(2 * (n - r), n - r),
            pw),
      q_pochhammer(PochSign::minus, 1, r) * q_int(n - r + 1));
  f.genT = RationalForm(shift(nr2 * q_binomial(2 * n - 2 * r, n - 1), pw), q_int(n));

  const IntPolynomial n1r2 = power_substitute(q_binomial(n - 1, r), 2);
  const IntPolynomial tail = q_binomial(2 * n - 2 * r - 1, n - 2);
  if (n >= 2) {
    f.genT2 = RationalForm(shift(mul_one_plus(n1r2 * tail, +1, static_cast<std::size_t>(n)), pw),
                           q_int(n - 1));
  }
  // ([n]_q - q[n-1]_q) T: both pieces are polynomials
  f.tr21 = shift(nr2 * q_binomial(2 * n - 2 * r, n - 1), pw) -
           shift(mul_one_plus(n1r2 * tail, +1, static_cast<std::size_t>(n)), pw + 1);

  std::vector<IntPolynomial> parts;
  parts.push_back(shift(power_substitute(q_binomial(n - 1, r - 1), 2) * q_binomial(2 * n - 2 * r + 1, n), pw));
  parts.push_back(-shift(n1r2 * tail, pw + 1));
  if (n >= 2 * r + 1) {
    parts.push_back(shift(n1r2 * q_binomial(2 * n - 2 * r - 1, n), static_cast<std::size_t>(r * r + r)));
  }
  f.tr22_parts = std::move(parts);
  return f;
}

}  // namespace qkoshy
