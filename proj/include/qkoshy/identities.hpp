#pragma once

// Registry binding each identity and theorem claim to an executable exact
// check over a parameter grid, with structured reports.

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qkoshy/errors.hpp"
#include "qkoshy/exactpoly.hpp"
#include "qkoshy/parallel.hpp"
#include "qkoshy/partitions.hpp"
#include "qkoshy/paths.hpp"
#include "qkoshy/qcore.hpp"

namespace qkoshy {

/// Ordered (name, value) list identifying one parameter cell.
using Cell = std::vector<std::pair<std::string, long>>;

struct Counterexample {
  Cell cell;
  std::string left;
  std::string right;
  std::string difference;
};

enum class Status { pass, fail, skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

struct IdentityReport {
  std::string identity_id;
  /// e.g. {("n_min", 1), ("n_max", 60)}
  std::vector<std::pair<std::string, long>> params;
  Status status = Status::skipped;
  std::optional<Counterexample> counterexample;
  long cells_checked = 0;
  long elapsed_ms = 0;
};

/// Collects the first failed comparison of one cell.
class CellContext {
 public:
  CellContext(Cell cell, bool mutate) : cell_(std::move(cell)), mutate_(mutate) {}

  long get(const std::string& name) const {
    for (const auto& [k, v] : cell_)
      if (k == name) return v;
    throw DomainError("cell has no parameter " + name);
  }

  bool equal(IntPolynomial lhs, const IntPolynomial& rhs, const Cell& extra = {}) {
    if (consume_mutation()) lhs += IntPolynomial{1};
    if (lhs == rhs) return true;
    fail(extra, to_string(lhs), to_string(rhs), to_string(lhs - rhs));
    return false;
  }

  bool equal(Integer lhs, const Integer& rhs, const Cell& extra = {}) {
    if (consume_mutation()) lhs += 1;
    if (lhs == rhs) return true;
    fail(extra, lhs.get_str(), rhs.get_str(), Integer(lhs - rhs).get_str());
    return false;
  }

  /// A named property of `value` (e.g. "nonnegative").
  bool holds(bool ok, const std::string& property, const std::string& value, const Cell& extra = {}) {
    if (consume_mutation()) ok = !ok;
    if (ok) return true;
    fail(extra, value, property, "property does not hold: " + property);
    return false;
  }

  bool failed() const { return result_.has_value(); }
  void record_exception(const std::string& what) { fail({}, "exception", what, what); }
  std::optional<Counterexample> take() { return std::move(result_); }

 private:
  bool consume_mutation() {
    const bool m = mutate_;
    mutate_ = false;
    return m;
  }
  void fail(const Cell& extra, std::string l, std::string r, std::string d) {
    if (result_) return;
    Counterexample c{cell_, std::move(l), std::move(r), std::move(d)};
    c.cell.insert(c.cell.end(), extra.begin(), extra.end());
    result_ = std::move(c);
  }

  Cell cell_;
  bool mutate_;
  std::optional<Counterexample> result_;
};

struct ParamSpec {
  std::string name;
  long lo;
  long hi;
  /// Largest accepted upper bound without --force.
  long guard;
};

struct IdentitySpec {
  std::string id;
  std::string claim;
  std::vector<ParamSpec> params;
  std::function<void(CellContext&)> check;
  /// Optional filter on grid cells (e.g. even n only).
  std::function<bool(const Cell&)> admissible;
};

/// Inclusive [lo, hi] per parameter name.
using Bounds = std::map<std::string, std::pair<long, long>>;

struct VerifyOptions {
  unsigned jobs = 0;  // 0: default_jobs()
  bool force = false;
  /// Cell index (in grid order) whose first comparison is perturbed; the
  /// harness self-test.
  long mutate_cell = -1;
};

// -- shared formula pieces -------------------------------------------------------

namespace detail {

/// (1 - q)^e
inline IntPolynomial one_minus_q_pow(long e) {
  std::vector<Integer> c(static_cast<std::size_t>(e + 1));
  for (long i = 0; i <= e; ++i) c[static_cast<std::size_t>(i)] = (i % 2 ? -1 : 1) * binom(e, i);
  return IntPolynomial(std::move(c));
}

/// F_n(q) = q N_n(q) for n >= 1; F_0 is supplied by the caller because the
/// two uses need different conventions.
inline IntPolynomial peak_poly(long n, long f0) {
  if (n == 0) return IntPolynomial::constant(f0);
  return shift(narayana_poly(n), 1);
}

/// q^k [n choose r]_{q^2}
inline IntPolynomial qsq_binomial(long n, long r, long k) {
  return shift(power_substitute(q_binomial(n, r), 2), static_cast<std::size_t>(k));
}

inline std::string shape_failure(const Shape& s, bool need_unimodal) {
  if (!s.is_nonnegative) return "nonnegative";
  if (need_unimodal && !s.is_reciprocal) return "reciprocal";
  if (need_unimodal && !s.is_unimodal) return "unimodal";
  return {};
}

template <class Visit>
void for_each_elevated_stats(long n, Visit&& visit) {
  for_each_elevated(n, [&](const Path& p) { visit(p, analyze(p, true)); });
}

// -- checks ---------------------------------------------------------------------

inline void check_koshy(CellContext& c) {
  const long n = c.get("n");
  Integer sum = 0;
  for (long r = 0; r <= n; ++r) sum += (r % 2 ? -1 : 1) * binom(n - r + 1, r) * catalan(n - r);
  c.equal(sum, 0);
}

inline void check_upeak_label(CellContext& c) {
  const long n = c.get("n");
  for (long j = 1; j <= n; ++j) {
    const auto brute = labeled_gen(n, StatSelector::up_peaks, j, PathWeight::unit);
    if (!c.equal(brute, IntPolynomial::constant(binom(n - j + 1, j) * catalan(n - j)), {{"j", j}})) return;
  }
}

inline void check_upeak_gf(CellContext& c) {
  const long n = c.get("n");
  std::vector<Integer> g(static_cast<std::size_t>(n + 2));
  for_each_elevated_stats(n, [&](const Path&, const PathStats& s) { g[static_cast<std::size_t>(s.up_peaks)] += 1; });
  IntPolynomial rhs;
  for (long j = 0; j <= n; ++j) {
    // (q - 1)^j = (-1)^j (1 - q)^j
    IntPolynomial term = one_minus_q_pow(j) * (binom(n - j + 1, j) * catalan(n - j));
    rhs += j % 2 ? -term : term;
  }
  c.equal(IntPolynomial(std::move(g)), rhs);
}

/// Right side of the Lassalle identity for N_n(q).
inline IntPolynomial lassalle_rhs(long n) {
  IntPolynomial sum;
  for (long k = 1; k <= n - 1; ++k) {
    IntPolynomial inner;
    for (long m = 0; m <= k - 1; ++m) {
      IntPolynomial t = one_minus_q_pow(k - m - 1) * (binom(k - 1, m) * binom(n - m, k));
      inner += m % 2 ? -t : t;
    }
    sum += narayana_poly(n - k) * inner;
  }
  return one_minus_q_pow(n - 1) + shift(sum, 1);
}

inline void check_lassalle(CellContext& c) {
  const long n = c.get("n");
  c.equal(narayana_poly(n), lassalle_rhs(n));
}

/// The inclusion-exclusion form times (1 - q)^n, with the printed limits
/// k = m..n-m+1 and F_0 = q N_0 = 0.
inline IntPolynomial exin3_cleared(long n) {
  IntPolynomial sum = shift(one_minus_q_pow(n - 1), 1);
  for (long m = 1; m <= n - 1; ++m) {
    IntPolynomial inner;
    for (long k = m; k <= n - m + 1; ++k)
      inner += peak_poly(n - k, 0) * one_minus_q_pow(k - m) * (binom(k - 1, m - 1) * binom(n - k + 1, m));
    inner = shift(inner, static_cast<std::size_t>(m));
    sum += m % 2 ? inner : -inner;
  }
  return sum;
}

inline void check_lassalle_transform(CellContext& c) {
  const long n = c.get("n");
  // F_n/(1-q)^n against q times the Lassalle right side over (1-q)^n
  const RationalForm lhs(exin3_cleared(n), one_minus_q_pow(n));
  const RationalForm rhs(shift(lassalle_rhs(n), 1), one_minus_q_pow(n));
  if (!c.holds(rational_equal(lhs, rhs), "equals q times the Lassalle right side", to_string(lhs.num))) return;
  c.equal(exin3_cleared(n), peak_poly(n, 0));
}

inline void check_tower_count(CellContext& c) {
  const long n = c.get("n");
  for_each_elevated_stats(n, [&](const Path& p, const PathStats& s) {
    if (c.failed()) return;
    const auto& towers = s.towers.towers;
    if (!c.holds(s.towers.colored_count() >= 1, "has a colored tower", p.str())) return;
    if (!c.equal(Integer(s.u_steps), Integer(s.uu_steps + static_cast<long>(towers.size())))) return;
    for (std::size_t i = 0; i < towers.size(); ++i) {
      if (!towers[i].colored) continue;
      const bool after_up = p[towers[i].start] == 'U';
      const bool after_uncolored =
          i > 0 && towers[i - 1].end() + 1 == towers[i].start && !towers[i - 1].colored;
      if (!c.holds(after_up || after_uncolored, "colored tower follows a U-step or an uncolored tower", p.str()))
        return;
    }
  });
  for (long m = 1; m <= n && !c.failed(); ++m) {
    c.equal(labeled_gen(n, StatSelector::colored_towers, m, PathWeight::unit),
            IntPolynomial::constant(binom(n - m + 1, m) * catalan(n - m)), {{"m", m}});
  }
}

inline void check_tower_ie(CellContext& c) {
  const long n = c.get("n");
  IntPolynomial alt;
  for (long m = 1; m <= n; ++m) {
    auto a = labeled_gen(n, StatSelector::colored_towers, m, PathWeight::peak_weight_q);
    alt += m % 2 ? a : -a;
  }
  c.equal(peak_poly(n, 0), alt);
}

/// A_{n,m}(q) from the solved recurrence, with F_0 = 1.
inline IntPolynomial tower_closed(long n, long m) {
  IntPolynomial sum;
  for (long k = m; k <= n - m + 1; ++k)
    sum += peak_poly(n - k, 1) * one_minus_q_pow(k - m) * (binom(n - k + 1, m) * binom(k - 1, m - 1));
  return shift(sum, static_cast<std::size_t>(m));
}

inline void check_tower_closed(CellContext& c) {
  const long n = c.get("n");
  for (long m = 1; m <= n; ++m) {
    const auto brute = labeled_gen(n, StatSelector::colored_towers, m, PathWeight::peak_weight_q);
    if (!c.equal(brute, tower_closed(n, m), {{"m", m}})) return;
    if (m == 1) {
      // the m = 1 sum, times (1 - q)^n
      IntPolynomial an11 = shift(one_minus_q_pow(n - 1), 1);
      for (long k = 1; k <= n - 1; ++k)
        an11 += shift(peak_poly(n - k, 0) * one_minus_q_pow(k - 1) * Integer(n - k + 1), 1);
      if (!c.equal(brute, an11, {{"m", 1}})) return;
    }
  }
}

inline void check_lemma1(CellContext& c) {
  const long n = c.get("n");
  for (long m = 1; m <= n; ++m) {
    std::set<LabeledPath> images;
    long domain = 0;
    bool ok = true;
    for_each_tower_labeling(n, m, [&](const LabeledPath& lp) {
      if (!ok) return;
      ++domain;
      auto img = lemma1_forward(lp);
      ok = lemma1_inverse(img) == lp;
      if (!ok) c.holds(false, "lemma1 round trip", to_string(lp), {{"m", m}});
      images.insert(std::move(img));
    });
    if (!ok) return;
    std::set<LabeledPath> target;
    for_each_u_labeling(n - m, m, [&](const LabeledPath& lp) { target.insert(lp); });
    if (!c.equal(Integer(static_cast<long>(images.size())), Integer(domain), {{"m", m}})) return;
    if (!c.holds(images == target, "image is all U-labelings of D_{n-m}",
                 std::to_string(images.size()) + " of " + std::to_string(target.size()), {{"m", m}}))
      return;
    if (!c.equal(Integer(domain), binom(n - m + 1, m) * catalan(n - m), {{"m", m}})) return;
  }
}

inline void check_lemma2(CellContext& c) {
  const long n = c.get("n");
  for (long m = 1; m <= n; ++m) {
    for (long r = 1; r <= m; ++r) {
      std::set<LabeledPath> images;
      long domain = 0;
      bool ok = true;
      for_each_sw_labeling(n, m, r, true, [&](const LabeledPath& lp) {
        if (!ok) return;
        ++domain;
        auto img = lemma2_forward(lp);
        ok = lemma2_inverse(img) == lp;
        if (!ok) c.holds(false, "lemma2 round trip", to_string(lp), {{"m", m}, {"r", r}});
        images.insert(std::move(img));
      });
      if (!ok) return;
      std::set<LabeledPath> target;
      for_each_sw_labeling(n - r, m, r, false, [&](const LabeledPath& lp) { target.insert(lp); });
      if (!c.equal(Integer(static_cast<long>(images.size())), Integer(domain), {{"m", m}, {"r", r}})) return;
      if (!c.holds(images == target, "image is all (s,w)-labelings of D_{n-r}",
                   std::to_string(images.size()) + " of " + std::to_string(target.size()), {{"m", m}, {"r", r}}))
        return;
      const auto a = labeled_gen(n - r, StatSelector::colored_towers, m, PathWeight::unit);
      if (!c.equal(Integer(domain), binom(m, r) * a.coeff(0), {{"m", m}, {"r", r}})) return;
    }
  }
}

/// M_{n,r}(q) from the ballot display, cleared of (1 - q)^n, with the
/// standalone term read as the k = n, m = 1 summand (M_{0,r} = 1).
inline IntPolynomial ballot_display(long n, long r, const std::vector<IntPolynomial>& m_lower) {
  IntPolynomial sum;
  for (long m = 1; m <= n; ++m) {
    IntPolynomial inner;
    for (long k = m; k <= n; ++k)
      inner += m_lower[static_cast<std::size_t>(n - k)] * one_minus_q_pow(k - m) *
               (binom(k - 1, m - 1) * binom(n - k + 1 + r, m));
    inner = shift(inner, static_cast<std::size_t>(m));
    sum += m % 2 ? inner : -inner;
  }
  return sum;
}

inline void check_ballot_lassalle(CellContext& c) {
  const long n = c.get("n"), r = c.get("r");
  std::vector<IntPolynomial> brute;
  for (long k = 0; k <= n; ++k) brute.push_back(ballot_weighted_gen(k, r));
  if (r == 0 && !c.equal(brute[static_cast<std::size_t>(n)], peak_poly(n, 1))) return;
  c.equal(brute[static_cast<std::size_t>(n)], ballot_display(n, r, brute));
}

inline long r_top(long n) { return (n + 1) / 2; }

inline void check_andrews(CellContext& c) {
  const long n = c.get("n");
  IntPolynomial sum;
  for (long r = 1; r <= r_top(n); ++r) sum += r % 2 ? t_value(r, n) : -t_value(r, n);
  c.equal(sum, q_catalan(n));
}

/// a_n^{(r)} = q^{r^2+r} [n-1 choose r]_{q^2} [2n-2r-1 choose n]_q
inline IntPolynomial a_n_r(long n, long r) {
  return qsq_binomial(n - 1, r, r * r + r) * q_binomial(2 * n - 2 * r - 1, n);
}

inline void check_t_forms(CellContext& c) {
  const long n = c.get("n");
  for (long r = 1; r <= r_top(n); ++r) {
    const Cell at{{"r", r}};
    const auto f = t_term(r, n);
    const RationalForm v(f.value);
    if (!c.holds(rational_equal(v, *f.andrews_rational), "equals the Andrews product form", to_string(f.value), at)) return;
    if (!c.holds(rational_equal(v, *f.genT), "equals the [n]_q quotient form", to_string(f.value), at)) return;
    if (f.genT2 && !c.holds(rational_equal(v, *f.genT2), "equals the [n-1]_q quotient form", to_string(f.value), at)) return;
    if (!c.holds(rational_equal(v, f.general_j), "equals the general-j form at j=1", to_string(f.value), at)) return;
    if (!c.equal(*f.tr21, f.value, at)) return;
    IntPolynomial split;
    for (const auto& p : *f.tr22_parts) split += p;
    if (!c.equal(split, f.value, at)) return;
  }
  // telescoping of the a_n^{(r)} terms down to a_n^{(0)} = [2n-1 choose n]_q
  const long top = r_top(n);
  IntPolynomial tel;
  for (long r = 1; r <= top - 1; ++r) {
    IntPolynomial pair = a_n_r(n, r - 1) + a_n_r(n, r);
    tel += r % 2 ? pair : -pair;
  }
  tel += (top - 1) % 2 ? -a_n_r(n, top - 1) : a_n_r(n, top - 1);
  if (!c.equal(tel, q_binomial(2 * n - 1, n))) return;
  c.equal(q_binomial(2 * n - 1, n), q_catalan(n) + shift(q_binomial(2 * n - 1, n - 2), 1));
}

inline void check_theorem1_poly(CellContext& c) {
  const long n = c.get("n"), r = c.get("r");
  // value [n]_q against q^{r^2-r} [n choose r]_{q^2} [2n-2r choose n-1]_q
  const auto times_n = div_one_plus(mul_one_plus(t_value(r, n), -1, static_cast<std::size_t>(n)), -1, 1);
  c.equal(times_n, qsq_binomial(n, r, r * r - r) * q_binomial(2 * n - 2 * r, n - 1));
}

inline void check_theorem1_parity(CellContext& c) {
  const long n = c.get("n"), r = c.get("r");
  IntPolynomial v = t_value(r, n);
  if (n % 2) v = mul_one_plus(v, +1, 1);
  c.holds(shape(v).is_nonnegative, "nonnegative", to_string(v));
}

/// Cells with 1 <= r <= floor((n+1)/2), optionally restricted to one parity of n.
inline std::function<bool(const Cell&)> t_cells(std::optional<int> parity = std::nullopt) {
  return [parity](const Cell& cell) {
    const long n = cell[0].second, r = cell[1].second;
    return r <= r_top(n) && (!parity || n % 2 == *parity);
  };
}

inline void check_theorem1_negq(CellContext& c) {
  const long r = c.get("r");
  const auto v = negate_variable(t_value(r, 2 * r - 1));
  const auto closed = shift(q_int(2 * r - 1) * power_substitute(q_catalan(r - 1), 2), static_cast<std::size_t>(r * r - r));
  if (!c.equal(v, closed)) return;
  c.holds(shape(v).is_nonnegative, "nonnegative", to_string(v));
}

inline void check_cyclo_div(CellContext& c) {
  const long n = c.get("n");
  for (long r = 1; 2 * r <= n; ++r) {
    const long g2 = 2 * std::gcd(n, r);
    for (long x = 2; x <= g2; ++x) {
      if (g2 % x) continue;
      if (!c.holds(divides(cyclotomic(x), q_binomial(2 * n - 2 * r, n - 1)), "divisible by Phi_" + std::to_string(x),
                   "[" + std::to_string(2 * n - 2 * r) + " choose " + std::to_string(n - 1) + "]_q",
                   {{"r", r}, {"x", x}}))
        return;
    }
  }
}

inline IntPolynomial invt_term(long n, long r) {
  return qsq_binomial(n - 1, r, r * r - r) * q_binomial(2 * n - 2 * r - 1, n - 2);
}

inline void check_invt(CellContext& c) {
  const long n = c.get("n");
  IntPolynomial sum;
  for (long r = 1; r <= r_top(n); ++r) sum += r % 2 ? invt_term(n, r) : -invt_term(n, r);
  c.equal(q_binomial(2 * n - 1, n - 2), sum);
}

inline void check_invt_partitions(CellContext& c) {
  const long n = c.get("n");
  IntPolynomial alt;
  for (long r = 0; 2 * r <= n + 1; ++r) {
    const auto term = side_gen(Side::mu_side, n, 1, r) * side_gen(Side::nu_side, n, 1, r);
    const auto symbolic = r == 0 ? q_binomial(2 * n - 1, n - 2) : invt_term(n, r);
    if (!c.equal(term, shift(symbolic, static_cast<std::size_t>(n + 1)), {{"r", r}})) return;
    alt += r % 2 ? -term : term;
  }
  c.equal(alt, IntPolynomial{});
}

inline void check_involution(CellContext& c) {
  const long n = c.get("n"), j = c.get("j");
  for (long r = 0; 2 * r <= n + j && !c.failed(); ++r) {
    for_each_pair(n, j, r, [&](const PartitionPair& p) {
      if (c.failed()) return;
      const auto img = involution_step(p);
      const std::string s = to_string(p);
      if (!c.holds(std::abs(img.r() - p.r()) == 1, "length of mu changes by one", s)) return;
      if (!c.equal(Integer(img.weight()), Integer(p.weight()))) return;
      c.holds(involution_step(img) == p, "involution", s);
    });
  }
}

inline void check_partheo(CellContext& c) {
  const long n = c.get("n");
  for (long r = 0; 2 * r <= n + 1; ++r) {
    const Cell at{{"r", r}};
    if (!c.equal(side_gen(Side::nu_side, n, 1, r),
                 shift(q_binomial(2 * n - 2 * r - 1, n - 2), static_cast<std::size_t>(n - 2 * r + 1)), at))
      return;
    if (!c.equal(side_gen(Side::mu_side, n, 1, r), qsq_binomial(n - 1, r, r * r + r), at)) return;
  }
}

inline void check_iepar(CellContext& c) {
  const long n = c.get("n");
  for (long r = 0; 2 * r <= n + 1; ++r) {
    const auto rhs = qsq_binomial(n - 1, r, r * r + r) *
                     shift(q_binomial(2 * n - 2 * r - 1, n - 2), static_cast<std::size_t>(n - 2 * r + 1));
    if (!c.equal(side_gen(Side::lambda_side, n, 1, r), rhs, {{"r", r}})) return;
  }
}

inline void check_qballot_forms(CellContext& c) {
  const long n = c.get("n"), j = c.get("j");
  const auto b = q_ballot(j, n);
  if (!c.equal(b, q_ballot(j, n, QBallotMethod::difference))) return;
  if (j == 1 && !c.equal(b, q_catalan(n))) return;
  c.equal(b.evaluate(1), ballot_number(n, j - 1));
}

inline void check_qballot_koshy(CellContext& c) {
  const long n = c.get("n"), j = c.get("j");
  IntPolynomial sum;
  for (long r = 1; r <= n && 2 * r - j <= n; ++r) sum += r % 2 ? t_value(r, n, j) : -t_value(r, n, j);
  c.equal(sum, q_ballot(j, n));
}

inline void check_tj_poly(CellContext& c) {
  const long n = c.get("n"), j = c.get("j");
  for (long r = 1; r <= n && 2 * r - j <= n; ++r) {
    const auto v = t_value(r, n, j);  // throws DivisionInexact if not a polynomial
    // spot evaluation of value [n]_q against the numerator at q = 2, 3
    for (long x : {2L, 3L}) {
      const Integer lhs = v.evaluate(x) * q_int(n).evaluate(x);
      Integer rhs = power_substitute(q_binomial(n, r), 2).evaluate(x) * q_binomial(2 * n + j - 1 - 2 * r, n - 1).evaluate(x) *
                    q_int(j).evaluate(x);
      Integer xp;
      mpz_ui_pow_ui(xp.get_mpz_t(), static_cast<unsigned long>(x), static_cast<unsigned long>(r * r - r));
      rhs *= xp;
      if (!c.equal(lhs, rhs, {{"r", r}, {"q", x}})) return;
    }
  }
}

inline void check_tj_negq(CellContext& c) {
  const long r = c.get("r");
  for (long j = 1; j <= r; ++j) {
    const auto v = negate_variable(t_value(r, 2 * r - j, j));
    if (!c.holds(shape(v).is_nonnegative, "nonnegative", to_string(v), {{"j", j}})) return;
  }
}

inline void check_qlucas(CellContext& c) {
  const long m = c.get("m");
  for (long k = 0; k <= m; ++k)
    for (long d = 2; d <= 12; ++d)
      if (!c.holds(q_lucas_check(m, k, d), "q-Lucas congruence", "k=" + std::to_string(k), {{"k", k}, {"d", d}}))
        return;
}

inline void check_maj_catalan(CellContext& c) {
  const long n = c.get("n");
  std::vector<Integer> acc(static_cast<std::size_t>(n * n + 1));
  for_each_dyck(n, [&](const Path& p) { acc[static_cast<std::size_t>(analyze(p, false).maj)] += 1; });
  c.equal(IntPolynomial(std::move(acc)), q_catalan(n));
}

inline void check_maj_ballot(CellContext& c) {
  const long n = c.get("n"), j = c.get("j");
  IntPolynomial acc;
  for_each_ballot_path(n, j, [&](const Path& p) {
    acc += IntPolynomial::monomial(static_cast<std::size_t>(analyze(p, false).maj));
  });
  c.equal(acc, q_ballot(j, n));
}

inline void check_succ_ranks(CellContext& c) {
  const long n = c.get("n"), j = c.get("j");
  std::vector<Integer> acc(1);
  for_each_partition(std::max(0L, n + j - 2), LengthSpec::at_most(n), false, [&](const Partition& p) {
    for (long rank : successive_ranks(p))
      if (rank >= j - 1) return;
    const auto w = static_cast<std::size_t>(p.weight());
    if (w >= acc.size()) acc.resize(w + 1);
    acc[w] += 1;
  });
  c.equal(IntPolynomial(std::move(acc)), q_ballot(j, n));
}

inline void check_brunetti(CellContext& c) {
  const long n = c.get("n");
  for (long r = 1; r <= n; ++r) {
    const auto p = q_int(std::gcd(n, r)) * q_binomial(n, r);
    const auto s = shape(p);
    const auto why = shape_failure(s, true);
    if (!c.holds(why.empty(), why.empty() ? "unimodal and reciprocal" : why, to_string(p), {{"r", r}})) return;
  }
}

}  // namespace detail

/// Every registered identity, in a fixed order.
inline const std::vector<IdentitySpec>& registry() {
  using namespace detail;
  static const std::vector<IdentitySpec> rows = [] {
    std::vector<IdentitySpec> v;
    auto add = [&](std::string id, std::string claim, std::vector<ParamSpec> params, std::function<void(CellContext&)> f,
                   std::function<bool(const Cell&)> admissible = nullptr) {
      v.push_back(IdentitySpec{std::move(id), std::move(claim), std::move(params), std::move(f), std::move(admissible)});
    };
    add("koshy", "sum_r (-1)^r binom(n-r+1,r) C_{n-r} = 0", {{"n", 1, 200, 2000}}, check_koshy);
    add("upeak-label", "a_{n,j}(UP) = binom(n-j+1,j) C_{n-j}", {{"n", 1, 10, 12}}, check_upeak_label);
    add("upeak-gf", "G_n(q) = sum_j binom(n-j+1,j) C_{n-j} (q-1)^j", {{"n", 1, 12, 13}}, check_upeak_gf);
    add("lassalle", "Lassalle's identity for N_n(q)", {{"n", 1, 60, 200}}, check_lassalle);
    add("lassalle-transform", "inclusion-exclusion form equals q times Lassalle's right side", {{"n", 1, 20, 80}},
        check_lassalle_transform);
    add("tower-count", "colored towers exist, follow a U or an uncolored tower, and a_{n,m}(T) = binom(n-m+1,m) C_{n-m}",
        {{"n", 1, 9, 11}}, check_tower_count);
    add("tower-ie", "F_n(q) = sum_m (-1)^{m-1} A_{n,m}(q)", {{"n", 1, 9, 11}}, check_tower_ie);
    add("tower-closed", "A_{n,m}(q) closed form (m = 1 also via the a_{n,1} sum)", {{"n", 1, 9, 11}}, check_tower_closed);
    add("lemma1", "colored-tower labelings of D_n biject with U-step labelings of D_{n-m}", {{"n", 1, 8, 9}}, check_lemma1);
    add("lemma2", "(tower, bottom) labelings of D_n biject with (tower, tower) labelings of D_{n-r}", {{"n", 1, 8, 9}},
        check_lemma2);
    add("ballot-lassalle", "ballot generalization of Lassalle's identity for M_{n,r}(q)", {{"n", 1, 8, 10}, {"r", 0, 3, 4}},
        check_ballot_lassalle);
    add("andrews", "C_n(q) = sum_r (-1)^{r-1} T_r(n,q)", {{"n", 1, 60, 120}}, check_andrews);
    add("t-forms", "the printed forms of T_r(n,q) agree; a_n^{(r)} telescoping", {{"n", 1, 30, 60}}, check_t_forms);
    const std::vector<ParamSpec> nr{{"n", 1, 60, 120}, {"r", 1, 30, 60}};
    add("theorem1-poly", "T_r(n,q) is a polynomial", nr, check_theorem1_poly, t_cells());
    add("theorem1-even", "T_r(n,q) nonnegative for even n", nr, check_theorem1_parity, t_cells(0));
    add("theorem1-odd", "(1+q) T_r(n,q) nonnegative for odd n", nr, check_theorem1_parity, t_cells(1));
    add("theorem1-negq", "T_r(2r-1,-q) = q^{r^2-r} [2r-1]_q C_{r-1}(q^2)", {{"r", 1, 30, 60}}, check_theorem1_negq);
    add("cyclo-div", "Phi_x divides [2n-2r choose n-1]_q for x | 2 gcd(n,r), x > 1, n even", {{"n", 1, 40, 80}},
        check_cyclo_div, [](const Cell& cell) { return cell[0].second % 2 == 0; });
    add("invT", "[2n-1 choose n-2]_q sieving identity", {{"n", 1, 40, 80}}, check_invt);
    add("invT-partitions", "partition brute force of the sieving identity", {{"n", 2, 10, 11}}, check_invt_partitions);
    add("involution", "weight-preserving fixed-point-free involution on (mu, nu) pairs", {{"n", 1, 9, 10}, {"j", 1, 4, 5}},
        check_involution);
    add("partheo", "partition interpretations of the mu and nu factors", {{"n", 2, 12, 12}}, check_partheo);
    add("iepar", "labeled repetition identity", {{"n", 2, 10, 11}}, check_iepar);
    add("qballot-forms", "q-Ballot quotient = difference form, B_1 = C_n(q), B_j(n,1) = B_{n,j-1}",
        {{"n", 1, 40, 100}, {"j", 1, 6, 20}}, check_qballot_forms);
    add("qballot-koshy", "B_j(n,q) = sum_r (-1)^{r-1} T_r^{(j)}(n,q)", {{"n", 1, 40, 80}, {"j", 1, 6, 12}},
        check_qballot_koshy);
    add("tj-poly", "T_r^{(j)}(n,q) is a polynomial for n >= 2r-j", {{"n", 1, 40, 80}, {"j", 1, 6, 12}}, check_tj_poly);
    add("tj-negq", "T_r^{(j)}(2r-j,-q) nonnegative for j <= r", {{"r", 1, 40, 60}}, check_tj_negq);
    add("qlucas", "q-Lucas congruence modulo Phi_d, 2 <= d <= 12", {{"m", 0, 40, 80}}, check_qlucas);
    add("maj-catalan", "major index over Dyck paths gives C_n(q)", {{"n", 0, 10, 12}}, check_maj_catalan);
    add("maj-ballot", "major index over ballot paths gives B_j(n,q)", {{"n", 0, 8, 10}, {"j", 1, 4, 6}}, check_maj_ballot);
    add("succ-ranks", "successive-ranks partitions give B_j(n,q)", {{"n", 0, 8, 10}, {"j", 1, 4, 6}}, check_succ_ranks);
    add("brunetti-instance", "[gcd(n,r)]_q [n choose r]_q unimodal and reciprocal", {{"n", 1, 60, 120}},
        check_brunetti);
    return v;
  }();
  return rows;
}

inline const IdentitySpec& find_identity(const std::string& id) {
  for (const auto& row : registry())
    if (row.id == id) return row;
  throw UnknownIdentity(id);
}

namespace detail {

inline std::vector<Cell> grid(const std::vector<ParamSpec>& params, const Bounds& bounds) {
  std::vector<Cell> cells{{}};
  for (const auto& p : params) {
    auto [lo, hi] = bounds.at(p.name);
    std::vector<Cell> next;
    for (const auto& c : cells) {
      for (long v = lo; v <= hi; ++v) {
        Cell e = c;
        e.emplace_back(p.name, v);
        next.push_back(std::move(e));
      }
    }
    cells = std::move(next);
  }
  return cells;
}

}  // namespace detail

/// Resolved bounds: the row defaults overridden by `overrides`.
inline Bounds resolve_bounds(const IdentitySpec& spec, const Bounds& overrides, bool force) {
  Bounds b;
  for (const auto& p : spec.params) {
    auto it = overrides.find(p.name);
    auto range = it == overrides.end() ? std::make_pair(p.lo, p.hi) : it->second;
    if (!force && range.second > p.guard) throw ScaleLimit(spec.id + " " + p.name, range.second, p.guard);
    b[p.name] = range;
  }
  for (const auto& [name, _] : overrides) {
    const bool known = std::any_of(spec.params.begin(), spec.params.end(), [&](const ParamSpec& p) { return p.name == name; });
    if (!known) throw DomainError(spec.id + " has no parameter " + name);
  }
  return b;
}

inline IdentityReport verify(const std::string& id, const Bounds& overrides = {}, const VerifyOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  const IdentitySpec& spec = find_identity(id);
  const Bounds bounds = resolve_bounds(spec, overrides, opt.force);
  std::vector<Cell> cells = detail::grid(spec.params, bounds);
  if (spec.admissible) std::erase_if(cells, [&](const Cell& c) { return !spec.admissible(c); });

  std::vector<std::optional<Counterexample>> results(cells.size());
  parallel_for(cells.size(), opt.jobs ? opt.jobs : default_jobs(), [&](std::size_t i) {
    CellContext ctx(cells[i], static_cast<long>(i) == opt.mutate_cell);
    try {
      spec.check(ctx);
    } catch (const ScaleLimit&) {
      throw;
    } catch (const Error& e) {
      ctx.record_exception(e.what());
    }
    results[i] = ctx.take();
  });

  IdentityReport rep;
  rep.identity_id = id;
  for (const auto& p : spec.params) {
    rep.params.emplace_back(p.name + "_min", bounds.at(p.name).first);
    rep.params.emplace_back(p.name + "_max", bounds.at(p.name).second);
  }
  rep.cells_checked = static_cast<long>(cells.size());
  rep.status = cells.empty() ? Status::skipped : Status::pass;
  for (auto& r : results) {
    if (r) {
      rep.status = Status::fail;
      rep.counterexample = std::move(r);
      break;
    }
  }
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// -- serialization -------------------------------------------------------------------

inline nlohmann::ordered_json to_json(const Cell& cell) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : cell) j[k] = v;
  return j;
}

inline nlohmann::ordered_json to_json(const IdentityReport& r, bool with_timing = true) {
  nlohmann::ordered_json j;
  j["identity"] = r.identity_id;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["status"] = to_string(r.status);
  if (r.counterexample) {
    j["counterexample"] = {{"cell", to_json(r.counterexample->cell)},
                           {"left", r.counterexample->left},
                           {"right", r.counterexample->right},
                           {"difference", r.counterexample->difference}};
  } else {
    j["counterexample"] = nullptr;
  }
  j["cells_checked"] = r.cells_checked;
  if (with_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

namespace detail {
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string join_cell(const Cell& cell) {
  std::string s;
  for (const auto& [k, v] : cell) s += (s.empty() ? "" : ";") + k + "=" + std::to_string(v);
  return s;
}
}  // namespace detail

inline std::string csv_header() {
  return "identity,params,status,counterexample_cell,counterexample_left,counterexample_right,"
         "counterexample_difference,cells_checked,elapsed_ms";
}

inline std::string to_csv_row(const IdentityReport& r) {
  using detail::csv_field;
  const auto& ce = r.counterexample;
  std::string row = csv_field(r.identity_id) + "," + csv_field(detail::join_cell(r.params)) + "," + to_string(r.status) + ",";
  row += ce ? csv_field(detail::join_cell(ce->cell)) + "," + csv_field(ce->left) + "," + csv_field(ce->right) + "," +
                  csv_field(ce->difference)
            : ",,,";
  row += "," + std::to_string(r.cells_checked) + "," + std::to_string(r.elapsed_ms);
  return row;
}

}  // namespace qkoshy
