#pragma once

// Counterexample sweeps for the unimodality conjecture on
// (1+q^n)[m choose n-1]_q (odd n) and (1+q^n)[j]_q [m choose n-1]_q (even n, even j).

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "qkoshy/errors.hpp"
#include "qkoshy/exactpoly.hpp"
#include "qkoshy/parallel.hpp"
#include "qkoshy/qcore.hpp"

namespace qkoshy {

enum class ConjectureCase { odd_n, even_n };

inline const char* to_string(ConjectureCase c) { return c == ConjectureCase::odd_n ? "odd-n" : "even-n"; }

inline ConjectureCase parse_case(const std::string& s) {
  if (s == "odd-n") return ConjectureCase::odd_n;
  if (s == "even-n") return ConjectureCase::even_n;
  throw DomainError("unknown conjecture case '" + s + "' (expected odd-n or even-n)");
}

inline constexpr long kDefaultSweepMax = 150;
inline constexpr long kDefaultSweepJMax = 10;
/// The odd-n T_r(n,q) positivity check runs up to this n.
inline constexpr long kConsequenceNMax = 60;

namespace detail {

inline void check_conjecture_params(ConjectureCase c, long m, long n, long j) {
  if (n < 1 || m < n) throw DomainError("conjecture_poly requires m >= n >= 1");
  if (c == ConjectureCase::odd_n && n % 2 == 0) throw DomainError("odd-n case requires odd n");
  if (c == ConjectureCase::even_n) {
    if (n % 2) throw DomainError("even-n case requires even n");
    if (j == 0 || j % 2) throw DomainError("even-n case requires even j != 0");
    if (j < 0) throw DomainError("even-n case requires j > 0");
  }
}

/// Product with a known [m choose n-1]_q.
inline IntPolynomial conjecture_from_binomial(const IntPolynomial& binomial, long n, long j) {
  IntPolynomial p = mul_one_plus(binomial, +1, static_cast<std::size_t>(n));
  if (j > 1) p = div_one_plus(mul_one_plus(p, -1, static_cast<std::size_t>(j)), -1, 1);
  return p;
}

}  // namespace detail

/// odd-n: (1+q^n)[m choose n-1]_q; even-n: (1+q^n)[j]_q [m choose n-1]_q.
inline IntPolynomial conjecture_poly(ConjectureCase c, long m, long n, long j = 0) {
  detail::check_conjecture_params(c, m, n, j);
  return detail::conjecture_from_binomial(q_binomial(m, n - 1), n, c == ConjectureCase::even_n ? j : 1);
}

struct SweepCounterexample {
  /// (m, n, j) for conjecture cells; (r, n) for the T_r(n,q) consequence check.
  std::vector<std::pair<std::string, long>> params;
  std::string polynomial;
  /// Coefficient index where the claimed property first fails, if one applies.
  std::optional<long> first_violation;
  std::string reason;
};

struct SweepGrid {
  long m_max = 0;
  long n_max = 0;
  long j_max = 0;
};

struct SweepReport {
  std::string case_id;
  SweepGrid grid;
  long verified_cells = 0;
  long consequence_cells = 0;
  std::vector<SweepCounterexample> counterexamples;
  SweepGrid frontier;
  long elapsed_ms = 0;

  bool passed() const { return counterexamples.empty(); }
};

struct SweepOptions {
  unsigned jobs = 0;
  /// Cells inside this box are treated as already verified.
  std::optional<SweepGrid> skip_box;
  /// Treat every cell's polynomial as a counterexample; the harness self-test.
  bool mutate = false;
};

namespace detail {

inline std::optional<SweepCounterexample> judge(const IntPolynomial& p, std::vector<std::pair<std::string, long>> params,
                                                bool mutate) {
  const Shape s = shape(p);
  SweepCounterexample ce;
  if (!s.is_nonnegative) {
    ce.reason = "negative coefficient";
    ce.first_violation = s.nonneg_prefix_degree + 1;
  } else if (!s.is_reciprocal) {
    ce.reason = "not reciprocal";
  } else if (!s.is_unimodal) {
    ce.reason = "not unimodal";
    ce.first_violation = s.first_unimodal_violation;
  } else if (mutate) {
    ce.reason = "forced";
  } else {
    return std::nullopt;
  }
  ce.params = std::move(params);
  ce.polynomial = to_string(p);
  return ce;
}

inline bool in_box(const std::optional<SweepGrid>& box, long m, long n, long j) {
  return box && m <= box->m_max && n <= box->n_max && j <= box->j_max;
}

inline long param(const SweepCounterexample& c, const std::string& name) {
  for (const auto& [k, v] : c.params)
    if (k == name) return v;
  return -1;
}

/// T_r(n,q) >= 0 for odd n >= 2r+1, plus the factored form cleared of
/// denominators: T (1-q^{2d}) [n]_{q^2} = q^{r^2-r} [n,r]_{q^2} [d]_{q^2} (1+q^n)(1-q) [2n-2r,n-1]_q.
inline std::optional<SweepCounterexample> consequence_cell(long r, long n, bool mutate) {
  const IntPolynomial t = t_value(r, n);
  std::vector<std::pair<std::string, long>> params{{"r", r}, {"n", n}};
  const Shape s = shape(t);
  if (!s.is_nonnegative || mutate) {
    return SweepCounterexample{params, to_string(t), s.is_nonnegative ? std::nullopt : std::optional<long>(s.nonneg_prefix_degree + 1),
                               mutate && s.is_nonnegative ? "forced" : "T_r(n,q) has a negative coefficient"};
  }
  const long d = std::gcd(n, r);
  const IntPolynomial lhs =
      mul_one_plus(t, -1, static_cast<std::size_t>(2 * d)) * power_substitute(q_int(n), 2);
  IntPolynomial rhs = power_substitute(q_binomial(n, r), 2) * power_substitute(q_int(d), 2);
  rhs = shift(mul_one_plus(mul_one_plus(rhs * q_binomial(2 * n - 2 * r, n - 1), +1, static_cast<std::size_t>(n)), -1, 1),
              static_cast<std::size_t>(r * r - r));
  if (lhs != rhs) return SweepCounterexample{params, to_string(t), std::nullopt, "factored form disagrees"};
  return std::nullopt;
}

inline void sort_counterexamples(std::vector<SweepCounterexample>& v) {
  std::stable_sort(v.begin(), v.end(), [](const SweepCounterexample& a, const SweepCounterexample& b) {
    return std::make_tuple(param(a, "m"), param(a, "n"), param(a, "j"), param(a, "r")) <
           std::make_tuple(param(b, "m"), param(b, "n"), param(b, "j"), param(b, "r"));
  });
}

}  // namespace detail

/// Check every admissible cell m >= n, m <= m_max, n <= n_max (and even
/// j <= j_max in the even case); all counterexamples are collected, sorted by
/// (m, n, j). The odd case also runs the T_r(n,q) consequence check.
inline SweepReport sweep(ConjectureCase c, long m_max, long n_max, long j_max = kDefaultSweepJMax,
                         const SweepOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  SweepReport rep;
  rep.case_id = to_string(c);
  rep.grid = {m_max, n_max, c == ConjectureCase::even_n ? j_max : 0};
  const unsigned jobs = opt.jobs ? opt.jobs : default_jobs();

  std::vector<long> js;
  if (c == ConjectureCase::even_n)
    for (long j = 2; j <= j_max; j += 2) js.push_back(j);
  else
    js.push_back(0);

  // one task per m: the row [m choose k]_q is shared by every n
  struct Out {
    long cells = 0;
    std::vector<SweepCounterexample> found;
  };
  const long rows = std::max(0L, m_max);
  std::vector<Out> per_m(static_cast<std::size_t>(rows));
  parallel_for(per_m.size(), jobs, [&](std::size_t idx) {
    const long m = static_cast<long>(idx) + 1;
    Out& out = per_m[idx];
    std::optional<std::vector<IntPolynomial>> row;
    for (long n = 1; n <= std::min(m, n_max); ++n) {
      if ((n % 2 == 1) != (c == ConjectureCase::odd_n)) continue;
      for (long j : js) {
        if (detail::in_box(opt.skip_box, m, n, j)) continue;
        if (!row) row = q_binomial_row(m);
        const IntPolynomial p =
            detail::conjecture_from_binomial((*row)[static_cast<std::size_t>(n - 1)], n, c == ConjectureCase::even_n ? j : 1);
        ++out.cells;
        std::vector<std::pair<std::string, long>> params{{"m", m}, {"n", n}};
        if (c == ConjectureCase::even_n) params.emplace_back("j", j);
        if (auto ce = detail::judge(p, std::move(params), opt.mutate)) out.found.push_back(std::move(*ce));
      }
    }
  });
  for (auto& o : per_m) {
    rep.verified_cells += o.cells;
    for (auto& ce : o.found) rep.counterexamples.push_back(std::move(ce));
  }

  if (c == ConjectureCase::odd_n) {
    std::vector<std::pair<long, long>> cells;
    for (long n = 3; n <= std::min(n_max, kConsequenceNMax); n += 2)
      for (long r = 1; 2 * r + 1 <= n; ++r)
        if (!(opt.skip_box && n <= opt.skip_box->n_max)) cells.emplace_back(r, n);
    std::vector<std::optional<SweepCounterexample>> found(cells.size());
    parallel_for(cells.size(), jobs, [&](std::size_t i) {
      found[i] = detail::consequence_cell(cells[i].first, cells[i].second, opt.mutate);
    });
    rep.consequence_cells = static_cast<long>(cells.size());
    for (auto& f : found)
      if (f) rep.counterexamples.push_back(std::move(*f));
  }

  detail::sort_counterexamples(rep.counterexamples);
  rep.frontier = rep.grid;
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// -- serialization and frontier persistence -------------------------------------------

inline nlohmann::ordered_json to_json(const SweepGrid& g) {
  return {{"m_max", g.m_max}, {"n_max", g.n_max}, {"j_max", g.j_max}};
}

inline nlohmann::ordered_json to_json(const SweepCounterexample& c) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  nlohmann::ordered_json j;
  j["params"] = params;
  j["polynomial"] = c.polynomial;
  j["first_violation"] = c.first_violation ? nlohmann::ordered_json(*c.first_violation) : nlohmann::ordered_json();
  j["reason"] = c.reason;
  return j;
}

inline SweepCounterexample counterexample_from_json(const nlohmann::ordered_json& j) {
  SweepCounterexample c;
  for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it) c.params.emplace_back(it.key(), it->get<long>());
  c.polynomial = j.at("polynomial").get<std::string>();
  if (j.contains("first_violation") && !j["first_violation"].is_null()) c.first_violation = j["first_violation"].get<long>();
  c.reason = j.value("reason", "");
  return c;
}

inline nlohmann::ordered_json to_json(const SweepReport& r, bool with_timing = true) {
  nlohmann::ordered_json j;
  j["case"] = r.case_id;
  j["grid"] = to_json(r.grid);
  j["status"] = r.passed() ? "pass" : "fail";
  j["verified_cells"] = r.verified_cells;
  j["consequence_cells"] = r.consequence_cells;
  j["counterexamples"] = nlohmann::ordered_json::array();
  for (const auto& c : r.counterexamples) j["counterexamples"].push_back(to_json(c));
  j["frontier"] = to_json(r.frontier);
  if (with_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

struct Frontier {
  std::string case_id;
  SweepGrid verified;
  std::vector<SweepCounterexample> counterexamples;
};

inline std::optional<Frontier> load_frontier(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::ordered_json j;
  try {
    in >> j;
    Frontier f;
    f.case_id = j.at("case").get<std::string>();
    const auto& v = j.at("verified");
    f.verified = {v.at("m_max").get<long>(), v.at("n_max").get<long>(), v.at("j_max").get<long>()};
    for (const auto& c : j.at("counterexamples")) f.counterexamples.push_back(counterexample_from_json(c));
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("malformed frontier file " + path.string() + ": " + e.what());
  }
}

/// Write via a temporary file and rename, so readers never see a partial file.
inline void save_frontier(const std::filesystem::path& path, const Frontier& f) {
  nlohmann::ordered_json j;
  j["case"] = f.case_id;
  j["verified"] = to_json(f.verified);
  j["counterexamples"] = nlohmann::ordered_json::array();
  for (const auto& c : f.counterexamples) j["counterexamples"].push_back(to_json(c));
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw DomainError("cannot write frontier file " + tmp.string());
    out << j.dump(2) << '\n';
    if (!out) throw DomainError("cannot write frontier file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace detail {
inline bool covers(const SweepGrid& a, const SweepGrid& b) {
  return a.m_max >= b.m_max && a.n_max >= b.n_max && a.j_max >= b.j_max;
}
}  // namespace detail

/// Sweep, skipping the box already recorded in `path` for the same case, and
/// persist the merged frontier. Counterexamples found earlier are carried over.
inline SweepReport sweep_with_frontier(ConjectureCase c, long m_max, long n_max, long j_max,
                                       const std::filesystem::path& path, SweepOptions opt = {}) {
  const auto prev = load_frontier(path);
  const bool same_case = prev && prev->case_id == to_string(c);
  if (same_case) opt.skip_box = prev->verified;
  SweepReport rep = sweep(c, m_max, n_max, j_max, opt);

  Frontier f{rep.case_id, rep.grid, rep.counterexamples};
  if (same_case) {
    // the verified region is the union of two boxes; record the larger box when
    // one contains the other, else the box just completed
    if (detail::covers(prev->verified, rep.grid)) f.verified = prev->verified;
    for (const auto& old : prev->counterexamples) {
      const bool dup = std::any_of(f.counterexamples.begin(), f.counterexamples.end(),
                                   [&](const SweepCounterexample& x) { return x.params == old.params; });
      if (!dup) f.counterexamples.push_back(old);
    }
  }
  detail::sort_counterexamples(f.counterexamples);
  rep.frontier = f.verified;
  rep.counterexamples = f.counterexamples;
  save_frontier(path, f);
  return rep;
}

}  // namespace qkoshy
