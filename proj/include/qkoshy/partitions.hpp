#pragma once

// Constrained partitions, the repetition statistic and the sign-reversing
// involution on pairs (mu, nu).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qkoshy/errors.hpp"
#include "qkoshy/exactpoly.hpp"
#include "qkoshy/qcore.hpp"

namespace qkoshy {

/// Cardinality guard for partition enumeration.
inline constexpr long kDefaultPartitionLimit = 20'000'000;

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<long> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw DomainError("partition parts must be positive");
      if (i > 0 && parts_[i - 1] < parts_[i]) throw DomainError("partition parts must be weakly decreasing");
    }
  }

  const std::vector<long>& parts() const noexcept { return parts_; }
  std::size_t length() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }
  long operator[](std::size_t i) const { return parts_[i]; }
  long weight() const {
    long w = 0;
    for (long p : parts_) w += p;
    return w;
  }
  bool is_strict() const {
    return std::adjacent_find(parts_.begin(), parts_.end(), std::equal_to<>()) == parts_.end();
  }
  long count(long value) const { return static_cast<long>(std::count(parts_.begin(), parts_.end(), value)); }

  Partition conjugate() const {
    std::vector<long> c;
    if (!parts_.empty()) {
      c.resize(static_cast<std::size_t>(parts_.front()));
      for (long p : parts_)
        for (long i = 0; i < p; ++i) ++c[static_cast<std::size_t>(i)];
    }
    return Partition(std::move(c));
  }

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<long> parts_;
};

inline std::string to_string(const Partition& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.length(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

struct LengthSpec {
  enum class Kind { exact, at_most } kind = Kind::exact;
  long length = 0;
  static LengthSpec exactly(long l) { return {Kind::exact, l}; }
  static LengthSpec at_most(long l) { return {Kind::at_most, l}; }
};

/// Visit every partition with parts <= max_part (and <= cap_schedule[i] for
/// the i-th part when given) whose length satisfies `len`.
template <class F>
void for_each_partition(long max_part, LengthSpec len, bool strict, F&& visit,
                        const std::optional<std::vector<long>>& cap_schedule = std::nullopt,
                        long limit = kDefaultPartitionLimit) {
  if (max_part < 0 || len.length < 0) throw DomainError("partition bounds must be nonnegative");
  // parts <= max_part, length <= L: binom(max_part + L, L) partitions at most
  const Integer bound = binom(max_part + len.length, len.length);
  if (bound > limit) throw ScaleLimit("partition enumeration", bound.fits_slong_p() ? bound.get_si() : -1, limit);

  std::vector<long> cur;
  std::function<void(long)> rec = [&](long cap) {
    const long l = static_cast<long>(cur.size());
    if (len.kind == LengthSpec::Kind::at_most || l == len.length) visit(Partition(cur));
    if (l == len.length) return;
    long c = cap;
    if (cap_schedule && static_cast<std::size_t>(l) < cap_schedule->size())
      c = std::min(c, (*cap_schedule)[static_cast<std::size_t>(l)]);
    for (long v = c; v >= 1; --v) {
      cur.push_back(v);
      rec(strict ? v - 1 : v);
      cur.pop_back();
    }
  };
  rec(max_part);
}

inline std::vector<Partition> enumerate_partitions(long max_part, LengthSpec len, bool strict,
                                                   const std::optional<std::vector<long>>& cap_schedule = std::nullopt,
                                                   long limit = kDefaultPartitionLimit) {
  std::vector<Partition> out;
  for_each_partition(max_part, len, strict, [&](const Partition& p) { out.push_back(p); }, cap_schedule, limit);
  return out;
}

/// Number of distinct values occurring at least twice.
inline long repetition_statistic(const Partition& p) {
  long k = 0;
  const auto& v = p.parts();
  for (std::size_t i = 0; i < v.size();) {
    std::size_t e = i;
    while (e < v.size() && v[e] == v[i]) ++e;
    if (e - i >= 2) ++k;
    i = e;
  }
  return k;
}

/// lambda_i - lambda'_i over the Durfee square.
inline std::vector<long> successive_ranks(const Partition& p) {
  const Partition c = p.conjugate();
  std::vector<long> ranks;
  for (std::size_t i = 0; i < p.length() && p[i] >= static_cast<long>(i) + 1; ++i) ranks.push_back(p[i] - c[i]);
  return ranks;
}

// -- (mu, nu) pairs ---------------------------------------------------------------

/// Caps of the pair family for context (n, j). For j = 1 mu has distinct
/// parts <= n-1 and nu has n-2r+1 parts in [1, n-1]; for j >= 2 both caps are
/// n and nu has n+j-2r parts.
struct PairFamily {
  long n = 0;
  long j = 1;

  long mu_cap() const { return j == 1 ? n - 1 : n; }
  long nu_cap() const { return j == 1 ? n - 1 : n; }
  long nu_length(long r) const { return n + j - 2 * r; }
  /// Largest r with a nonempty family.
  long r_max() const { return std::max(0L, std::min(mu_cap(), nu_length(0) / 2)); }
};

struct PartitionPair {
  Partition mu;
  Partition nu;
  long n = 0;
  long j = 1;

  long r() const { return static_cast<long>(mu.length()); }
  long weight() const { return 2 * mu.weight() + nu.weight(); }
  friend auto operator<=>(const PartitionPair&, const PartitionPair&) = default;
};

inline std::string to_string(const PartitionPair& p) {
  return "(" + to_string(p.mu) + ", " + to_string(p.nu) + ")";
}

/// Empty string when the pair satisfies the family invariants, else the reason.
inline std::string pair_violation(const PartitionPair& p) {
  const PairFamily fam{p.n, p.j};
  if (!p.mu.is_strict()) return "mu is not strict";
  if (!p.mu.empty() && p.mu[0] > fam.mu_cap()) return "mu exceeds its cap";
  if (static_cast<long>(p.nu.length()) != fam.nu_length(p.r())) return "nu has the wrong number of parts";
  if (!p.nu.empty() && p.nu[0] > fam.nu_cap()) return "nu exceeds its cap";
  return {};
}

/// The sign-reversing involution: x is the smallest value repeated in
/// mu^2 ∪ nu. If mu_r = x, x moves from mu to nu as (x, x); otherwise two
/// copies of x leave nu and x is appended to mu.
/// Inputs are not validated: outside the identity's range the map may find
/// no repeated part (NoRepeatedPart) or leave the family (InvariantViolation).
inline PartitionPair involution_step(const PartitionPair& pair) {
  const auto& nu = pair.nu.parts();
  std::optional<long> x;
  if (!pair.mu.empty()) x = pair.mu.parts().back();
  for (std::size_t i = 0; i + 1 < nu.size(); ++i) {
    if (nu[i] == nu[i + 1] && (!x || nu[i] < *x)) x = nu[i];
  }
  if (!x) throw NoRepeatedPart();

  std::vector<long> mu_parts = pair.mu.parts();
  std::vector<long> nu_parts = nu;
  if (!mu_parts.empty() && mu_parts.back() == *x) {
    mu_parts.pop_back();
    auto pos = std::find_if(nu_parts.begin(), nu_parts.end(), [&](long v) { return v < *x; });
    nu_parts.insert(pos, 2, *x);
  } else {
    auto pos = std::find(nu_parts.begin(), nu_parts.end(), *x);
    nu_parts.erase(pos, pos + 2);
    mu_parts.push_back(*x);
  }
  PartitionPair out{Partition(std::move(mu_parts)), Partition(std::move(nu_parts)), pair.n, pair.j};
  if (auto why = pair_violation(out); !why.empty())
    throw InvariantViolation("involution image of " + to_string(pair) + ": " + why);
  return out;
}

/// Every admissible pair for (n, j) with |mu| = r.
template <class F>
void for_each_pair(long n, long j, long r, F&& visit, long limit = kDefaultPartitionLimit) {
  const PairFamily fam{n, j};
  const long nl = fam.nu_length(r);
  if (r < 0 || nl < 0 || fam.mu_cap() < 0) return;
  for_each_partition(std::max(0L, fam.mu_cap()), LengthSpec::exactly(r), true, [&](const Partition& mu) {
    for_each_partition(std::max(0L, fam.nu_cap()), LengthSpec::exactly(nl), false, [&](const Partition& nu) {
      visit(PartitionPair{mu, nu, n, j});
    }, std::nullopt, limit);
  }, std::nullopt, limit);
}

enum class Side { mu_side, nu_side, lambda_side };

/// Partition-side generating polynomials, by enumeration.
/// mu_side: sum of q^{2|mu|}; nu_side: sum of q^{|nu|}; lambda_side (j = 1):
/// sum of q^{|lambda|} over lambda_1 <= n-1 with exactly n+1 parts, where `r`
/// selects the labeled version sum binom(rep(lambda), r) q^{|lambda|}.
inline IntPolynomial side_gen(Side side, long n, long j, long r, long limit = kDefaultPartitionLimit) {
  const PairFamily fam{n, j};
  std::vector<Integer> acc;
  auto add = [&](long power, const Integer& c) {
    if (static_cast<std::size_t>(power) >= acc.size()) acc.resize(static_cast<std::size_t>(power) + 1);
    acc[static_cast<std::size_t>(power)] += c;
  };
  switch (side) {
    case Side::mu_side:
      if (r < 0 || fam.mu_cap() < 0) break;
      for_each_partition(fam.mu_cap(), LengthSpec::exactly(r), true,
                         [&](const Partition& mu) { add(2 * mu.weight(), 1); }, std::nullopt, limit);
      break;
    case Side::nu_side:
      if (fam.nu_length(r) < 0 || fam.nu_cap() < 0) break;
      for_each_partition(fam.nu_cap(), LengthSpec::exactly(fam.nu_length(r)), false,
                         [&](const Partition& nu) { add(nu.weight(), 1); }, std::nullopt, limit);
      break;
    case Side::lambda_side:
      if (j != 1) throw DomainError("lambda_side is defined for j = 1");
      if (n < 1) break;
      for_each_partition(n - 1, LengthSpec::exactly(n + 1), false, [&](const Partition& lam) {
        add(lam.weight(), binom(repetition_statistic(lam), r));
      }, std::nullopt, limit);
      break;
  }
  return IntPolynomial(std::move(acc));
}

inline IntPolynomial lambda_side(long n) { return side_gen(Side::lambda_side, n, 1, 0); }

}  // namespace qkoshy
