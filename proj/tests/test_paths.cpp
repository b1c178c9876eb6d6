#include <gtest/gtest.h>

#include <set>
#include <string>

#include "qkoshy/paths.hpp"

using qkoshy::IntPolynomial;
using qkoshy::Integer;
using qkoshy::LabeledPath;
using qkoshy::Path;
using qkoshy::PathFamily;
using qkoshy::StatSelector;
using qkoshy::PathWeight;

namespace {

long count_factor(const std::string& w, const std::string& f) {
  long c = 0;
  for (std::size_t i = 0; i + f.size() <= w.size(); ++i)
    if (w.compare(i, f.size(), f) == 0) ++c;
  return c;
}

// q * N_n(q), from the closed form of the Narayana numbers
IntPolynomial peak_oracle(long n) {
  std::vector<Integer> c(static_cast<std::size_t>(n + 1));
  if (n == 0) c[0] = 1;
  for (long k = 1; k <= n; ++k) c[static_cast<std::size_t>(k)] = qkoshy::binom(n, k) * qkoshy::binom(n, k - 1) / n;
  return IntPolynomial(std::move(c));
}

}  // namespace

TEST(Paths, EnumerationCounts) {
  EXPECT_EQ(qkoshy::enumerate(PathFamily::elevated, 3).size(), 5u);
  for (long n = 0; n <= 10; ++n)
    EXPECT_EQ(Integer(static_cast<long>(qkoshy::enumerate(PathFamily::dyck, n).size())), qkoshy::catalan(n));
  for (long n = 0; n <= 7; ++n) {
    for (long j = 1; j <= 4; ++j) {
      auto paths = qkoshy::enumerate(PathFamily::ballot_path, n, j);
      EXPECT_EQ(Integer(static_cast<long>(paths.size())), qkoshy::ballot_number(n, j - 1)) << n << "," << j;
    }
    for (long r = 0; r <= 3; ++r)
      EXPECT_EQ(Integer(static_cast<long>(qkoshy::enumerate_ballot_tuples(n, r).size())), qkoshy::ballot_number(n, r));
  }
  for (const auto& p : qkoshy::enumerate(PathFamily::elevated, 6)) EXPECT_TRUE(p.is_elevated()) << p.str();
  EXPECT_THROW(qkoshy::enumerate(PathFamily::dyck, 15), qkoshy::ScaleLimit);
  EXPECT_THROW(Path("UXD"), qkoshy::DomainError);
}

TEST(Paths, AnalyzeFigure) {
  auto s = qkoshy::analyze(Path("UUUDDUDUDD"), true);
  ASSERT_EQ(s.towers.towers.size(), 3u);
  std::vector<long> heights;
  std::vector<bool> colored;
  for (const auto& t : s.towers.towers) {
    heights.push_back(t.height);
    colored.push_back(t.colored);
  }
  EXPECT_EQ(heights, (std::vector<long>{2, 1, 1}));
  EXPECT_EQ(colored, (std::vector<bool>{true, false, true}));
  EXPECT_EQ(s.towers.towers[0].bottom_index, 0u);
  EXPECT_FALSE(s.towers.towers[2].bottom_index.has_value());
  EXPECT_EQ(s.peaks, 3);
  EXPECT_EQ(s.up_peaks, 1);
  EXPECT_EQ(s.u_steps, 5);
  EXPECT_EQ(s.uu_steps, 2);
}

TEST(Paths, PurePyramid) {
  for (long n = 1; n <= 8; ++n) {
    Path p(std::string(static_cast<std::size_t>(n + 1), 'U') + std::string(static_cast<std::size_t>(n + 1), 'D'));
    auto t = qkoshy::analyze(p, true).towers.towers;
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].height, n);
    EXPECT_TRUE(t[0].colored);
  }
}

TEST(Paths, FrozenReadingDiffersOnChains) {
  // four unit towers after a colored pyramid: the chain decides the reading
  Path p("UUUDDUDUDUDD");
  auto seq = qkoshy::analyze(p, true, qkoshy::ColoringRule::sequential).towers.towers;
  auto frz = qkoshy::analyze(p, true, qkoshy::ColoringRule::frozen).towers.towers;
  std::vector<bool> s, f;
  for (const auto& t : seq) s.push_back(t.colored);
  for (const auto& t : frz) f.push_back(t.colored);
  EXPECT_EQ(s, (std::vector<bool>{true, false, true, false}));
  EXPECT_EQ(f, (std::vector<bool>{true, false, true, true}));
}

TEST(Paths, MajorIndex) {
  IntPolynomial c2;
  for (const auto& p : qkoshy::enumerate(PathFamily::dyck, 2))
    c2 += IntPolynomial::monomial(static_cast<std::size_t>(qkoshy::analyze(p, false).maj));
  EXPECT_EQ(c2, (IntPolynomial{1, 0, 1}));
  for (long n = 0; n <= 10; ++n) {
    std::vector<Integer> acc(static_cast<std::size_t>(n * n + 1));
    qkoshy::for_each_dyck(n, [&](const Path& p) { acc[static_cast<std::size_t>(qkoshy::analyze(p, false).maj)] += 1; });
    EXPECT_EQ(IntPolynomial(acc), qkoshy::q_catalan(n)) << n;
  }
  for (long n = 0; n <= 8; ++n) {
    for (long j = 1; j <= 4; ++j) {
      IntPolynomial acc;
      qkoshy::for_each_ballot_path(n, j, [&](const Path& p) {
        acc += IntPolynomial::monomial(static_cast<std::size_t>(qkoshy::analyze(p, false).maj));
      });
      EXPECT_EQ(acc, qkoshy::q_ballot(j, n)) << n << "," << j;
    }
  }
}

TEST(Paths, LabeledGenExamples) {
  EXPECT_EQ(qkoshy::labeled_gen(3, StatSelector::up_peaks, 1, PathWeight::unit), IntPolynomial{6});
  EXPECT_EQ(qkoshy::labeled_gen(3, StatSelector::colored_towers, 1, PathWeight::unit), IntPolynomial{6});
  for (long n = 1; n <= 9; ++n) {
    for (auto sel : {StatSelector::up_peaks, StatSelector::u_steps, StatSelector::colored_towers}) {
      auto f = qkoshy::labeled_gen(n, sel, 0, PathWeight::peak_weight_q);
      EXPECT_EQ(f, peak_oracle(n));
      EXPECT_EQ(f, qkoshy::shift(qkoshy::narayana_poly(n), 1));
    }
  }
}

TEST(PathsProperty, TowerPartitionAndColoringSoundness) {
  // D_0 = {UD} has an empty inner path and no towers
  EXPECT_TRUE(qkoshy::analyze(Path("UD"), true).towers.towers.empty());
  for (long n = 1; n <= 9; ++n) {
    qkoshy::for_each_elevated(n, [&](const Path& p) {
      const std::string& w = p.str();
      auto s = qkoshy::analyze(p, true);
      const auto& towers = s.towers.towers;
      EXPECT_EQ(s.u_steps, s.uu_steps + static_cast<long>(towers.size())) << w;
      EXPECT_GE(s.towers.colored_count(), 1) << w;
      EXPECT_EQ(s.peaks, count_factor(w, "UD"));
      EXPECT_EQ(s.up_peaks, count_factor(w, "UUD"));
      EXPECT_EQ(s.uu_steps, count_factor(w, "UU"));
      const std::string inner = w.substr(1, w.size() - 2);
      for (std::size_t i = 0; i < towers.size(); ++i) {
        const auto& t = towers[i];
        const std::string pyramid = std::string(static_cast<std::size_t>(t.height), 'U') +
                                    std::string(static_cast<std::size_t>(t.height), 'D');
        EXPECT_EQ(inner.compare(t.start, pyramid.size(), pyramid), 0) << w;
        // maximal: not wrapped by U ... D inside the inner path
        const bool wrapped = t.start > 0 && inner[t.start - 1] == 'U' && t.end() + 1 < inner.size() &&
                             inner[t.end() + 1] == 'D';
        EXPECT_FALSE(wrapped) << w;
        if (i > 0) EXPECT_GT(t.start, towers[i - 1].end());
        if (!t.colored) continue;
        // predecessor in the elevated path is a U-step or an uncolored tower
        const std::size_t pred = t.start;  // index in w of the step before the tower
        const bool after_up = w[pred] == 'U';
        const bool after_uncolored = i > 0 && towers[i - 1].end() + 1 == t.start && !towers[i - 1].colored;
        EXPECT_TRUE(after_up || after_uncolored) << w;
      }
    });
  }
}

TEST(PathsProperty, ColoredTowerCountIdentity) {
  for (long n = 1; n <= 9; ++n) {
    for (long m = 1; m <= n; ++m) {
      auto a = qkoshy::labeled_gen(n, StatSelector::colored_towers, m, PathWeight::unit);
      EXPECT_EQ(a, IntPolynomial::constant(qkoshy::binom(n - m + 1, m) * qkoshy::catalan(n - m))) << n << "," << m;
    }
  }
}

TEST(PathsProperty, FrozenReadingFailsCountIdentity) {
  bool mismatch = false;
  for (long n = 1; n <= 9 && !mismatch; ++n) {
    for (long m = 1; m <= n; ++m) {
      auto a = qkoshy::labeled_gen(n, StatSelector::colored_towers, m, PathWeight::unit, qkoshy::ColoringRule::frozen);
      if (a != IntPolynomial::constant(qkoshy::binom(n - m + 1, m) * qkoshy::catalan(n - m))) mismatch = true;
    }
  }
  EXPECT_TRUE(mismatch);
}

TEST(PathsProperty, UpPeakCountIdentity) {
  for (long n = 1; n <= 10; ++n)
    for (long m = 1; m <= n; ++m)
      EXPECT_EQ(qkoshy::labeled_gen(n, StatSelector::up_peaks, m, PathWeight::unit),
                IntPolynomial::constant(qkoshy::binom(n - m + 1, m) * qkoshy::catalan(n - m)));
}

TEST(Paths, TowerDeletionExamples) {
  // the figure path with its last tower labeled: that tower follows the
  // uncolored middle tower, so it is deleted and the middle tower's top labeled
  LabeledPath lp{Path("UUUDDUDUDD"), qkoshy::LabelKind::towers, {7}, {}};
  auto img = qkoshy::lemma1_forward(lp);
  EXPECT_EQ(img.path.str(), "UUUDDUDD");
  EXPECT_EQ(img.s_labels, (std::vector<std::size_t>{5}));
  EXPECT_EQ(qkoshy::lemma1_inverse(img), lp);

  LabeledPath one{Path("UUDD"), qkoshy::LabelKind::towers, {1}, {}};
  auto base = qkoshy::lemma1_forward(one);
  EXPECT_EQ(base.path.str(), "UD");
  EXPECT_EQ(base.s_labels, (std::vector<std::size_t>{0}));

  LabeledPath tall{Path("UUUDDD"), qkoshy::LabelKind::towers, {1}, {}};
  EXPECT_EQ(qkoshy::lemma1_forward(tall).path.str(), "UUDD");
  EXPECT_EQ(qkoshy::lemma1_forward(tall).s_labels, (std::vector<std::size_t>{1}));

  LabeledPath bad{Path("UUUDDUDUDD"), qkoshy::LabelKind::towers, {5}, {}};
  EXPECT_THROW(qkoshy::lemma1_forward(bad), qkoshy::MalformedLabel);
}

TEST(PathsProperty, TowerDeletionIsBijective) {
  std::size_t total_n3_m1 = 0;
  for (long n = 1; n <= 8; ++n) {
    for (long m = 1; m <= n; ++m) {
      std::set<LabeledPath> images;
      std::size_t domain = 0;
      qkoshy::for_each_tower_labeling(n, m, [&](const LabeledPath& lp) {
        ++domain;
        auto img = qkoshy::lemma1_forward(lp);
        ASSERT_EQ(img.path.u_count(), n - m + 1);
        ASSERT_EQ(qkoshy::lemma1_inverse(img), lp) << to_string(lp) << " -> " << to_string(img);
        images.insert(img);
      });
      std::set<LabeledPath> target;
      qkoshy::for_each_u_labeling(n - m, m, [&](const LabeledPath& lp) {
        target.insert(lp);
        ASSERT_EQ(qkoshy::lemma1_forward(qkoshy::lemma1_inverse(lp)), lp) << to_string(lp);
      });
      EXPECT_EQ(images.size(), domain) << n << "," << m;
      EXPECT_EQ(images, target) << n << "," << m;
      if (n == 3 && m == 1) total_n3_m1 = domain;
    }
  }
  EXPECT_EQ(total_n3_m1, 6u);
}

TEST(Paths, BottomStrippingExamples) {
  LabeledPath lp{Path("UUUDDUDUDD"), qkoshy::LabelKind::towers, {1, 7}, {1}};
  auto img = qkoshy::lemma2_forward(lp);
  EXPECT_EQ(img.path.str(), "UUDUDUDD");
  EXPECT_EQ(img.s_labels, (std::vector<std::size_t>{1, 5}));
  EXPECT_EQ(img.w_labels, (std::vector<std::size_t>{1}));
  EXPECT_EQ(qkoshy::lemma2_inverse(img), lp);
  LabeledPath no_bottom{Path("UUUDDUDUDD"), qkoshy::LabelKind::towers, {1, 7}, {7}};
  EXPECT_THROW(qkoshy::lemma2_forward(no_bottom), qkoshy::MalformedLabel);
  LabeledPath w_without_s{Path("UUUDDUDUDD"), qkoshy::LabelKind::towers, {7}, {1}};
  EXPECT_THROW(qkoshy::lemma2_forward(w_without_s), qkoshy::MalformedLabel);
}

TEST(PathsProperty, BottomStrippingIsBijective) {
  for (long n = 1; n <= 8; ++n) {
    for (long m = 1; m <= n; ++m) {
      for (long r = 0; r <= m; ++r) {
        std::set<LabeledPath> images;
        std::size_t domain = 0;
        qkoshy::for_each_sw_labeling(n, m, r, true, [&](const LabeledPath& lp) {
          ++domain;
          auto img = qkoshy::lemma2_forward(lp);
          ASSERT_EQ(img.path.size() + 2 * static_cast<std::size_t>(r), lp.path.size());
          auto before = qkoshy::analyze(lp.path, true).towers.towers;
          auto after = qkoshy::analyze(img.path, true).towers.towers;
          for (std::size_t i = 0; i < lp.w_labels.size(); ++i) {
            auto h = [](const auto& ts, std::size_t start) {
              for (const auto& t : ts)
                if (t.start + 1 == start) return t.height;
              return -1L;
            };
            EXPECT_EQ(h(after, img.w_labels[i]), h(before, lp.w_labels[i]) - 1);
          }
          ASSERT_EQ(qkoshy::lemma2_inverse(img), lp) << to_string(lp);
          images.insert(img);
        });
        std::set<LabeledPath> target;
        if (n - r >= 0)
          qkoshy::for_each_sw_labeling(n - r, m, r, false, [&](const LabeledPath& lp) { target.insert(lp); });
        EXPECT_EQ(images.size(), domain);
        EXPECT_EQ(images, target) << n << "," << m << "," << r;
        // |target| = binom(m, r) * a_{n-r,m}(T)
        auto a = qkoshy::labeled_gen(n - r, StatSelector::colored_towers, m, PathWeight::unit);
        const Integer expect = qkoshy::binom(m, r) * (a.is_zero() ? Integer(0) : a.coeff(0));
        EXPECT_EQ(Integer(static_cast<unsigned long>(target.size())), expect);
      }
    }
  }
}

TEST(Paths, BallotWeightedGen) {
  EXPECT_EQ(qkoshy::ballot_weighted_gen(0, 2), IntPolynomial{1});
  EXPECT_EQ(qkoshy::ballot_weighted_gen(1, 1), (IntPolynomial{0, 2}));
  for (long n = 0; n <= 9; ++n) EXPECT_EQ(qkoshy::ballot_weighted_gen(n, 0), peak_oracle(n));
  for (long n = 0; n <= 7; ++n)
    for (long r = 0; r <= 3; ++r)
      EXPECT_EQ(qkoshy::ballot_weighted_gen(n, r).evaluate(1), qkoshy::ballot_number(n, r));
}
