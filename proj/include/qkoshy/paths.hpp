#pragma once

// Dyck, elevated Dyck and ballot lattice paths: enumeration, statistics,
// tower coloring, and the tower/U-step labeling bijections.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qkoshy/errors.hpp"
#include "qkoshy/exactpoly.hpp"
#include "qkoshy/qcore.hpp"

namespace qkoshy {

inline constexpr long kDefaultPathScaleLimit = 14;

/// A word over {U, D}. Stored as its rendering, e.g. "UUDD".
class Path {
 public:
  Path() = default;
  explicit Path(std::string steps) : steps_(std::move(steps)) {
    for (char c : steps_)
      if (c != 'U' && c != 'D') throw DomainError("path steps must be U or D");
  }

  std::size_t size() const noexcept { return steps_.size(); }
  bool up(std::size_t i) const { return steps_[i] == 'U'; }
  char operator[](std::size_t i) const { return steps_[i]; }
  const std::string& str() const noexcept { return steps_; }

  long u_count() const { return static_cast<long>(std::count(steps_.begin(), steps_.end(), 'U')); }

  /// Never below zero and ends at zero.
  bool is_dyck() const {
    long h = 0;
    for (char c : steps_) {
      h += c == 'U' ? 1 : -1;
      if (h < 0) return false;
    }
    return h == 0;
  }
  /// U p D with p Dyck, i.e. height >= 1 strictly between the endpoints.
  bool is_elevated() const {
    if (steps_.size() < 2 || !is_dyck()) return false;
    long h = 0;
    for (std::size_t i = 0; i + 1 < steps_.size(); ++i) {
      h += steps_[i] == 'U' ? 1 : -1;
      if (h < 1) return false;
    }
    return true;
  }

  friend auto operator<=>(const Path&, const Path&) = default;

 private:
  std::string steps_;
};

// -- enumeration ---------------------------------------------------------------

namespace detail {
inline void check_scale(const char* what, long n, long limit) {
  if (n > limit) throw ScaleLimit(what, n, limit);
}
}  // namespace detail

/// Visit every Dyck path of semilength n in lexicographic order (U < D).
template <class F>
void for_each_dyck(long n, F&& visit, long limit = kDefaultPathScaleLimit) {
  detail::check_scale("dyck enumeration", n, limit);
  if (n < 0) return;
  std::string w;
  w.reserve(static_cast<std::size_t>(2 * n));
  std::function<void(long, long)> rec = [&](long up, long down) {
    if (up == n && down == n) {
      visit(Path(w));
      return;
    }
    if (up < n) {
      w.push_back('U');
      rec(up + 1, down);
      w.pop_back();
    }
    if (down < up) {
      w.push_back('D');
      rec(up, down + 1);
      w.pop_back();
    }
  };
  rec(0, 0);
}

/// Elevated paths U p D of length 2n+2 (the family D_n).
template <class F>
void for_each_elevated(long n, F&& visit, long limit = kDefaultPathScaleLimit) {
  for_each_dyck(n, [&](const Path& p) { visit(Path("U" + p.str() + "D")); }, limit);
}

/// Lattice words with n U-steps and n+j-1 D-steps never below height -(j-1).
template <class F>
void for_each_ballot_path(long n, long j, F&& visit, long limit = kDefaultPathScaleLimit) {
  detail::check_scale("ballot path enumeration", n, limit);
  if (j < 1) throw DomainError("ballot paths require j >= 1");
  const long downs = n + j - 1;
  std::string w;
  std::function<void(long, long, long)> rec = [&](long up, long down, long h) {
    if (up == n && down == downs) {
      visit(Path(w));
      return;
    }
    if (up < n) {
      w.push_back('U');
      rec(up + 1, down, h + 1);
      w.pop_back();
    }
    if (down < downs && h - 1 >= -(j - 1)) {
      w.push_back('D');
      rec(up, down + 1, h - 1);
      w.pop_back();
    }
  };
  rec(0, 0, 0);
}

/// (r+1)-tuples of Dyck paths whose semilengths sum to n.
template <class F>
void for_each_ballot_tuple(long n, long r, F&& visit, long limit = kDefaultPathScaleLimit) {
  detail::check_scale("ballot tuple enumeration", n, limit);
  if (r < 0) throw DomainError("ballot tuples require r >= 0");
  std::vector<Path> tuple(static_cast<std::size_t>(r + 1));
  std::function<void(std::size_t, long)> rec = [&](std::size_t slot, long left) {
    if (slot == tuple.size() - 1) {
      for_each_dyck(left, [&](const Path& p) {
        tuple[slot] = p;
        visit(static_cast<const std::vector<Path>&>(tuple));
      }, limit);
      return;
    }
    for (long a = 0; a <= left; ++a) {
      for_each_dyck(a, [&](const Path& p) {
        tuple[slot] = p;
        rec(slot + 1, left - a);
      }, limit);
    }
  };
  rec(0, n);
}

enum class PathFamily { dyck, elevated, ballot_path };

/// Materialized enumeration; `param` is j for ballot paths.
inline std::vector<Path> enumerate(PathFamily family, long n, long param = 1,
                                   long limit = kDefaultPathScaleLimit) {
  std::vector<Path> out;
  auto push = [&](const Path& p) { out.push_back(p); };
  switch (family) {
    case PathFamily::dyck: for_each_dyck(n, push, limit); break;
    case PathFamily::elevated: for_each_elevated(n, push, limit); break;
    case PathFamily::ballot_path: for_each_ballot_path(n, param, push, limit); break;
  }
  return out;
}

inline std::vector<std::vector<Path>> enumerate_ballot_tuples(long n, long r,
                                                              long limit = kDefaultPathScaleLimit) {
  std::vector<std::vector<Path>> out;
  for_each_ballot_tuple(n, r, [&](const std::vector<Path>& t) { out.push_back(t); }, limit);
  return out;
}

// -- statistics and towers ---------------------------------------------------------

/// How Step 2 of the coloring reads "uncolored": at processing time
/// (sequential) or as of the end of Step 1 (frozen).
enum class ColoringRule { sequential, frozen };

/// A maximal pyramid U^h D^h of the inner path. `start` indexes the inner
/// path p-bar; add one for the index in the elevated path.
struct Tower {
  std::size_t start = 0;
  long height = 0;
  bool colored = false;
  /// First U-step of a colored tower of height >= 2.
  std::optional<std::size_t> bottom_index;

  std::size_t end() const { return start + 2 * static_cast<std::size_t>(height) - 1; }
  std::size_t top() const { return start + static_cast<std::size_t>(height) - 1; }
};

struct TowerDecomposition {
  std::vector<Tower> towers;

  long colored_count() const {
    return static_cast<long>(std::count_if(towers.begin(), towers.end(), [](const Tower& t) { return t.colored; }));
  }
};

struct PathStats {
  long peaks = 0;
  long up_peaks = 0;
  long u_steps = 0;
  long uu_steps = 0;
  long maj = 0;
  TowerDecomposition towers;
};

/// Towers of `inner`. With `elevated`, a tower at position 0 follows the
/// elevating U-step.
inline TowerDecomposition decompose_towers(std::string_view inner, bool elevated,
                                           ColoringRule rule = ColoringRule::sequential) {
  TowerDecomposition dec;
  std::vector<bool> step1;
  const std::size_t len = inner.size();
  for (std::size_t k = 0; k + 1 < len; ++k) {
    if (inner[k] != 'U' || inner[k + 1] != 'D') continue;
    long up = 0, down = 0;
    for (std::size_t i = k + 1; i-- > 0 && inner[i] == 'U';) ++up;
    for (std::size_t i = k + 1; i < len && inner[i] == 'D'; ++i) ++down;
    Tower t;
    t.height = std::min(up, down);
    t.start = k + 1 - static_cast<std::size_t>(t.height);

    bool by_step1 = false;
    bool colored = false;
    if (t.start == 0) {
      by_step1 = elevated;
      colored = elevated;
    } else if (inner[t.start - 1] == 'U') {
      by_step1 = true;
      colored = true;
    } else if (!dec.towers.empty() && dec.towers.back().end() == t.start - 1) {
      colored = rule == ColoringRule::sequential ? !dec.towers.back().colored : !step1.back();
    }
    t.colored = colored;
    if (colored && t.height >= 2) t.bottom_index = t.start;
    dec.towers.push_back(t);
    step1.push_back(by_step1);
  }
  return dec;
}

inline PathStats analyze(const Path& p, bool elevated, ColoringRule rule = ColoringRule::sequential) {
  PathStats s;
  const std::string& w = p.str();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 'U') ++s.u_steps;
    if (i + 1 < w.size()) {
      if (w[i] == 'U' && w[i + 1] == 'D') ++s.peaks;
      if (w[i] == 'U' && w[i + 1] == 'U') ++s.uu_steps;
      if (w[i] == 'D' && w[i + 1] == 'U') s.maj += static_cast<long>(i) + 1;
    }
    if (i + 2 < w.size() && w[i] == 'U' && w[i + 1] == 'U' && w[i + 2] == 'D') ++s.up_peaks;
  }
  if (elevated) {
    if (!p.is_elevated()) throw DomainError("not an elevated Dyck path: " + w);
    s.towers = decompose_towers(std::string_view(w).substr(1, w.size() - 2), true, rule);
    if (w.size() > 2 && s.towers.colored_count() == 0)
      throw InvariantViolation("elevated path without a colored tower: " + w);
  } else {
    s.towers = decompose_towers(w, false, rule);
  }
  return s;
}

enum class StatSelector { up_peaks, u_steps, colored_towers };
enum class PathWeight { unit, peak_weight_q };

/// Sum over D_n of binom(|selector(p)|, m) * weight(p).
inline IntPolynomial labeled_gen(long n, StatSelector selector, long m, PathWeight weight,
                                 ColoringRule rule = ColoringRule::sequential,
                                 long limit = kDefaultPathScaleLimit) {
  std::vector<Integer> acc(static_cast<std::size_t>(n + 2));
  for_each_elevated(n, [&](const Path& p) {
    PathStats s = analyze(p, true, rule);
    long count = 0;
    switch (selector) {
      case StatSelector::up_peaks: count = s.up_peaks; break;
      case StatSelector::u_steps: count = s.u_steps; break;
      case StatSelector::colored_towers: count = s.towers.colored_count(); break;
    }
    const std::size_t power = weight == PathWeight::unit ? 0 : static_cast<std::size_t>(s.peaks);
    acc[power] += binom(count, m);
  }, limit);
  return IntPolynomial(std::move(acc));
}

// -- labeled paths and the bijections -----------------------------------------------

enum class LabelKind {
  /// labels are step indices (in the elevated path) of colored towers' first steps
  towers,
  /// labels are step indices of U-steps of the elevated path
  u_steps,
};

struct LabeledPath {
  Path path;
  LabelKind kind = LabelKind::towers;
  /// Sorted, distinct.
  std::vector<std::size_t> s_labels;
  /// Sorted subset of s_labels: towers whose bottom also carries w.
  std::vector<std::size_t> w_labels;

  friend auto operator<=>(const LabeledPath&, const LabeledPath&) = default;
};

inline std::string to_string(const LabeledPath& lp) {
  std::string s = lp.path.str() + (lp.kind == LabelKind::towers ? " T{" : " U{");
  for (std::size_t i = 0; i < lp.s_labels.size(); ++i) s += (i ? "," : "") + std::to_string(lp.s_labels[i]);
  s += "}";
  if (!lp.w_labels.empty()) {
    s += " W{";
    for (std::size_t i = 0; i < lp.w_labels.size(); ++i) s += (i ? "," : "") + std::to_string(lp.w_labels[i]);
    s += "}";
  }
  return s;
}

namespace detail {

inline std::vector<Tower> towers_in_path_coords(const Path& p) {
  auto dec = analyze(p, true).towers.towers;
  for (auto& t : dec) {
    t.start += 1;
    if (t.bottom_index) *t.bottom_index += 1;
  }
  return dec;
}

inline const Tower& labeled_colored_tower(const std::vector<Tower>& towers, std::size_t start) {
  auto it = std::find_if(towers.begin(), towers.end(), [&](const Tower& t) { return t.start == start; });
  if (it == towers.end() || !it->colored)
    throw MalformedLabel("label " + std::to_string(start) + " is not a colored tower");
  return *it;
}

inline void check_sorted_unique(const std::vector<std::size_t>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] >= v[i]) throw MalformedLabel("labels must be sorted and distinct");
}

}  // namespace detail

/// Tower-deletion map: m labeled colored towers on D_n to m labeled U-steps
/// on D_{n-m}. A height-1 tower after a U-step is deleted and the U-step
/// before it labeled; a height-1 tower after an uncolored tower is deleted and
/// that tower labeled; a taller tower loses its outer U and D and stays
/// labeled. Tower labels then become labels on their top U-step.
inline LabeledPath lemma1_forward(const LabeledPath& lp) {
  if (lp.kind != LabelKind::towers) throw MalformedLabel("lemma1_forward expects tower labels");
  detail::check_sorted_unique(lp.s_labels);
  const auto towers = detail::towers_in_path_coords(lp.path);
  const std::string& w = lp.path.str();
  std::vector<bool> erase(w.size(), false);
  std::vector<std::size_t> marked;

  for (std::size_t label : lp.s_labels) {
    const Tower& t = detail::labeled_colored_tower(towers, label);
    if (t.height >= 2) {
      erase[t.start] = erase[t.end()] = true;
      marked.push_back(t.top());
    } else {
      erase[t.start] = erase[t.start + 1] = true;
      const std::size_t pred = t.start - 1;
      if (w[pred] == 'U') {
        marked.push_back(pred);
      } else {
        auto it = std::find_if(towers.begin(), towers.end(), [&](const Tower& x) { return x.end() == pred; });
        if (it == towers.end() || it->colored)
          throw InvariantViolation("colored height-1 tower without U or uncolored predecessor");
        marked.push_back(it->top());
      }
    }
  }

  std::vector<std::size_t> new_index(w.size());
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    new_index[i] = out.size();
    if (!erase[i]) out.push_back(w[i]);
  }
  LabeledPath res{Path(std::move(out)), LabelKind::u_steps, {}, {}};
  for (std::size_t i : marked) {
    if (erase[i]) throw InvariantViolation("label landed on a deleted step");
    res.s_labels.push_back(new_index[i]);
  }
  std::sort(res.s_labels.begin(), res.s_labels.end());
  if (std::adjacent_find(res.s_labels.begin(), res.s_labels.end()) != res.s_labels.end())
    throw InvariantViolation("two towers mapped to the same U-step");
  return res;
}

/// Inverse of the tower-deletion map, rebuilding the labeled towers left to right. Colors are
/// recomputed after every insertion, since inserting a colored tower changes
/// the coloring of towers further right.
inline LabeledPath lemma1_inverse(const LabeledPath& lp) {
  if (lp.kind != LabelKind::u_steps) throw MalformedLabel("lemma1_inverse expects U-step labels");
  detail::check_sorted_unique(lp.s_labels);
  std::string w = lp.path.str();
  for (std::size_t u : lp.s_labels)
    if (u >= w.size() || w[u] != 'U') throw MalformedLabel("label " + std::to_string(u) + " is not a U-step");

  std::vector<std::size_t> created;  // start indices of rebuilt towers
  std::size_t offset = 0;
  for (std::size_t orig : lp.s_labels) {
    const std::size_t u = orig + offset;
    const std::size_t before = w.size();
    if (w[u + 1] == 'U' || w.size() == 2) {
      w.insert(u + 1, "UD");
      created.push_back(u + 1);
    } else {
      const auto towers = detail::towers_in_path_coords(Path(w));
      auto it = std::find_if(towers.begin(), towers.end(), [&](const Tower& t) { return t.top() == u; });
      if (it == towers.end()) throw InvariantViolation("peak U-step without a tower");
      if (it->colored) {
        w.insert(it->end() + 1, "D");
        w.insert(it->start, "U");
        created.push_back(it->start);
      } else {
        w.insert(it->end() + 1, "UD");
        created.push_back(it->end() + 1);
      }
    }
    offset += w.size() - before;
  }

  Path p(std::move(w));
  const auto towers = detail::towers_in_path_coords(p);
  LabeledPath res{p, LabelKind::towers, {}, {}};
  for (std::size_t start : created) {
    auto it = std::find_if(towers.begin(), towers.end(), [&](const Tower& t) { return t.start == start; });
    if (it == towers.end() || !it->colored) throw InvariantViolation("rebuilt tower is not colored");
    res.s_labels.push_back(start);
  }
  std::sort(res.s_labels.begin(), res.s_labels.end());
  return res;
}

namespace detail {

/// Remove (erase) or add (wrap) one U before and one D after each listed
/// tower and carry every label to the same tower's new start index.
inline LabeledPath reshape_towers(const LabeledPath& lp, bool erase) {
  const auto towers = towers_in_path_coords(lp.path);
  for (std::size_t label : lp.s_labels) labeled_colored_tower(towers, label);
  const std::string& w = lp.path.str();
  std::vector<int> before(w.size() + 1, 0), after(w.size() + 1, 0);
  for (std::size_t label : lp.w_labels) {
    if (!std::binary_search(lp.s_labels.begin(), lp.s_labels.end(), label))
      throw MalformedLabel("w label on a tower without s label");
    const Tower& t = labeled_colored_tower(towers, label);
    if (erase) {
      if (!t.bottom_index) throw MalformedLabel("w label on a tower without a bottom");
      before[t.start] = after[t.end()] = -1;
    } else {
      before[t.start] = after[t.end()] = 1;
    }
  }
  std::string out;
  std::vector<std::size_t> new_start(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (before[i] > 0) out.push_back('U');
    new_start[i] = out.size();
    if (before[i] >= 0 && after[i] >= 0) out.push_back(w[i]);
    if (after[i] > 0) out.push_back('D');
  }
  LabeledPath res{Path(std::move(out)), LabelKind::towers, {}, {}};
  auto move_label = [&](std::size_t label) {
    const Tower& t = labeled_colored_tower(towers, label);
    const bool changed = std::binary_search(lp.w_labels.begin(), lp.w_labels.end(), label);
    // a stripped tower starts right after its removed bottom
    return erase && changed ? new_start[t.start + 1] : new_start[t.start] - (!erase && changed ? 1 : 0);
  };
  for (std::size_t label : lp.s_labels) res.s_labels.push_back(move_label(label));
  for (std::size_t label : lp.w_labels) res.w_labels.push_back(move_label(label));

  const auto after_towers = towers_in_path_coords(res.path);
  if (after_towers.size() != towers.size()) throw InvariantViolation("tower count changed under the bottom-stripping map");
  for (std::size_t label : res.s_labels) labeled_colored_tower(after_towers, label);
  return res;
}

}  // namespace detail

/// Bottom-stripping map: every s-labeled colored tower whose bottom carries a
/// w label loses its bottom and one D-step, keeping both labels.
inline LabeledPath lemma2_forward(const LabeledPath& lp) {
  if (lp.kind != LabelKind::towers) throw MalformedLabel("lemma2_forward expects tower labels");
  detail::check_sorted_unique(lp.s_labels);
  detail::check_sorted_unique(lp.w_labels);
  return detail::reshape_towers(lp, true);
}

/// Inverse of the bottom-stripping map: each (s,w)-labeled tower t becomes U t D.
inline LabeledPath lemma2_inverse(const LabeledPath& lp) {
  if (lp.kind != LabelKind::towers) throw MalformedLabel("lemma2_inverse expects tower labels");
  detail::check_sorted_unique(lp.s_labels);
  detail::check_sorted_unique(lp.w_labels);
  return detail::reshape_towers(lp, false);
}

/// All labelings of D_n with m s-labeled colored towers.
template <class F>
void for_each_tower_labeling(long n, long m, F&& visit, long limit = kDefaultPathScaleLimit) {
  for_each_elevated(n, [&](const Path& p) {
    std::vector<std::size_t> colored;
    for (const auto& t : detail::towers_in_path_coords(p))
      if (t.colored) colored.push_back(t.start);
    if (static_cast<long>(colored.size()) < m) return;
    std::vector<bool> pick(colored.size(), false);
    std::fill(pick.begin(), pick.begin() + m, true);
    do {
      LabeledPath lp{p, LabelKind::towers, {}, {}};
      for (std::size_t i = 0; i < colored.size(); ++i)
        if (pick[i]) lp.s_labels.push_back(colored[i]);
      visit(static_cast<const LabeledPath&>(lp));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }, limit);
}

/// All labelings of D_n with m s-labeled U-steps.
template <class F>
void for_each_u_labeling(long n, long m, F&& visit, long limit = kDefaultPathScaleLimit) {
  for_each_elevated(n, [&](const Path& p) {
    std::vector<std::size_t> ups;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p.up(i)) ups.push_back(i);
    if (static_cast<long>(ups.size()) < m) return;
    std::vector<bool> pick(ups.size(), false);
    std::fill(pick.begin(), pick.begin() + m, true);
    do {
      LabeledPath lp{p, LabelKind::u_steps, {}, {}};
      for (std::size_t i = 0; i < ups.size(); ++i)
        if (pick[i]) lp.s_labels.push_back(ups[i]);
      visit(static_cast<const LabeledPath&>(lp));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }, limit);
}

/// Configurations with m s-labeled colored towers of which r also carry w.
/// With `bottoms` the w-labeled towers must have a bottom (height >= 2).
template <class F>
void for_each_sw_labeling(long n, long m, long r, bool bottoms, F&& visit,
                          long limit = kDefaultPathScaleLimit) {
  for_each_tower_labeling(n, m, [&](const LabeledPath& base) {
    const auto towers = detail::towers_in_path_coords(base.path);
    std::vector<std::size_t> eligible;
    for (std::size_t label : base.s_labels)
      if (!bottoms || detail::labeled_colored_tower(towers, label).bottom_index) eligible.push_back(label);
    if (static_cast<long>(eligible.size()) < r) return;
    std::vector<bool> pick(eligible.size(), false);
    std::fill(pick.begin(), pick.begin() + r, true);
    do {
      LabeledPath lp = base;
      for (std::size_t i = 0; i < eligible.size(); ++i)
        if (pick[i]) lp.w_labels.push_back(eligible[i]);
      visit(static_cast<const LabeledPath&>(lp));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }, limit);
}

/// M_{n,r}(q): sum over (r+1)-tuples of Dyck paths of total semilength n of
/// q^{total peaks}.
inline IntPolynomial ballot_weighted_gen(long n, long r, long limit = kDefaultPathScaleLimit) {
  if (r > 4) throw ScaleLimit("ballot_weighted_gen r", r, 4);
  std::vector<Integer> acc(static_cast<std::size_t>(n + 1));
  for_each_ballot_tuple(n, r, [&](const std::vector<Path>& tuple) {
    long peaks = 0;
    for (const auto& p : tuple) peaks += analyze(p, false).peaks;
    acc[static_cast<std::size_t>(peaks)] += 1;
  }, limit);
  return IntPolynomial(std::move(acc));
}

}  // namespace qkoshy
