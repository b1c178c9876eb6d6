// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qkoshy/conjectures.hpp"
#include "qkoshy/identities.hpp"

namespace {

using qkoshy::Bounds;

struct Outcome {
  bool ok = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.ok) {
    o.ok = false;
    o.detail = what;
  }
}

/// Run registry rows at explicit bounds; every row must pass.
void rows(Outcome& o, const std::vector<std::pair<std::string, Bounds>>& list) {
  for (const auto& [id, b] : list) {
    const auto rep = qkoshy::verify(id, b);
    std::string why = id + " " + qkoshy::to_string(rep.status);
    if (rep.counterexample) {
      why += " at";
      for (const auto& [k, v] : rep.counterexample->cell) why += " " + k + "=" + std::to_string(v);
    }
    require(o, rep.status == qkoshy::Status::pass, why);
  }
}

Bounds n_to(long lo, long hi) { return {{"n", {lo, hi}}}; }

nlohmann::ordered_json strip_timing(nlohmann::ordered_json j) {
  if (j.is_array()) {
    for (auto& x : j) x = strip_timing(x);
  } else if (j.is_object()) {
    j.erase("elapsed_ms");
    for (auto& [k, v] : j.items()) v = strip_timing(v);
  }
  return j;
}

struct Criterion {
  int number;
  std::string title;
  double budget_s;
  std::function<Outcome()> body;
};

}  // namespace

int main() {
  using qkoshy::IntPolynomial;
  const std::vector<Criterion> criteria = {
      {1, "Koshy integer identity, 1 <= n <= 200", 1.0,
       [] {
         Outcome o;
         rows(o, {{"koshy", n_to(1, 200)}});
         return o;
       }},
      {2, "up-peak labeled counts (n <= 10) and generating function (n <= 12)", 60.0,
       [] {
         Outcome o;
         rows(o, {{"upeak-label", n_to(1, 10)}, {"upeak-gf", n_to(1, 12)}});
         require(o, qkoshy::labeled_gen(3, qkoshy::StatSelector::up_peaks, 1, qkoshy::PathWeight::unit) == IntPolynomial{6},
                 "a_{3,1}(UP) != 6");
         return o;
       }},
      {3, "tower machinery and a_{n,m}(T) under sequential coloring, n <= 9", 120.0,
       [] {
         Outcome o;
         rows(o, {{"tower-count", n_to(1, 9)}});
         return o;
       }},
      {4, "tower-deletion and bottom-stripping bijections, n <= 8", 600.0,
       [] {
         Outcome o;
         rows(o, {{"lemma1", n_to(1, 8)}, {"lemma2", n_to(1, 8)}});
         return o;
       }},
      {5, "Lassalle identity (n <= 60) and the inclusion-exclusion ledger (n <= 9)", 600.0,
       [] {
         Outcome o;
         rows(o, {{"lassalle", n_to(1, 60)},
                  {"lassalle-transform", n_to(1, 20)},
                  {"tower-ie", n_to(1, 9)},
                  {"tower-closed", n_to(1, 9)}});
         return o;
       }},
      {6, "ballot generalization of Lassalle, n <= 8, r <= 3; M_{n,0} = q N_n", 600.0,
       [] {
         Outcome o;
         rows(o, {{"ballot-lassalle", {{"n", {1, 8}}, {"r", {0, 3}}}}});
         return o;
       }},
      {7, "Andrews identity (n <= 60) and T-form equivalences (n <= 30)", 600.0,
       [] {
         Outcome o;
         rows(o, {{"andrews", n_to(1, 60)}, {"t-forms", n_to(1, 30)}});
         require(o, qkoshy::q_catalan(3) == IntPolynomial{1, 0, 1, 1, 1, 0, 1}, "C_3(q) spot value");
         return o;
       }},
      {8, "T_r(n,q) polynomiality, positivity, T_r(2r-1,-q), cyclotomic divisibility", 600.0,
       [] {
         Outcome o;
         rows(o, {{"theorem1-poly", n_to(1, 60)},
                  {"theorem1-even", n_to(1, 60)},
                  {"theorem1-odd", n_to(1, 60)},
                  {"theorem1-negq", {{"r", {1, 30}}}},
                  {"cyclo-div", n_to(1, 40)}});
         return o;
       }},
      {9, "q-Lucas congruence, m <= 40, 0 <= k <= m, 2 <= d <= 12", 600.0,
       [] {
         Outcome o;
         rows(o, {{"qlucas", {{"m", {0, 40}}}}});
         return o;
       }},
      {10, "sieving identity, involution and partition interpretations", 600.0,
       [] {
         Outcome o;
         rows(o, {{"invT", n_to(1, 40)},
                  {"invT-partitions", n_to(2, 10)},
                  {"involution", {{"n", {1, 9}}, {"j", {1, 4}}}},
                  {"partheo", n_to(2, 12)},
                  {"iepar", n_to(2, 10)}});
         return o;
       }},
      {11, "q-Ballot suite", 600.0,
       [] {
         Outcome o;
         const Bounds nj{{"n", {1, 40}}, {"j", {1, 6}}};
         const Bounds small{{"n", {0, 8}}, {"j", {1, 4}}};
         rows(o, {{"qballot-forms", nj},
                  {"qballot-koshy", nj},
                  {"tj-poly", nj},
                  {"tj-negq", {{"r", {1, 40}}}},
                  {"maj-catalan", n_to(0, 10)},
                  {"maj-ballot", small},
                  {"succ-ranks", small}});
         return o;
       }},
      {12, "conjecture sweep m, n <= 150 (even j <= 10) and T_r(n,q) >= 0 for odd n <= 60", 600.0,
       [] {
         Outcome o;
         for (auto c : {qkoshy::ConjectureCase::odd_n, qkoshy::ConjectureCase::even_n}) {
           const auto rep = qkoshy::sweep(c, 150, 150, 10);
           require(o, rep.passed(),
                   rep.case_id + ": " + std::to_string(rep.counterexamples.size()) + " counterexample(s)");
           require(o, rep.verified_cells > 0, rep.case_id + ": empty grid");
           if (c == qkoshy::ConjectureCase::odd_n)
             require(o, rep.consequence_cells == 435, "consequence cells " + std::to_string(rep.consequence_cells));
         }
         return o;
       }},
      {13, "'qkoshy all' completes; JSON byte-stable across --jobs", 600.0,
       [] {
         Outcome o;
         const auto dir = std::filesystem::temp_directory_path() / "qkoshy_acceptance";
         std::filesystem::create_directories(dir);
         std::vector<nlohmann::ordered_json> docs;
         for (const char* jobs : {"1", "4"}) {
           const auto out = dir / (std::string("all_") + jobs + ".json");
           const std::string cmd = std::string("\"") + QKOSHY_TOOL + "\" all --format json --jobs " + jobs +
                                   " --output \"" + out.string() + "\" 2>/dev/null";
           const int rc = std::system(cmd.c_str());
           require(o, rc == 0, std::string("qkoshy all --jobs ") + jobs + " exit status " + std::to_string(rc));
           std::ifstream in(out);
           try {
             docs.push_back(strip_timing(nlohmann::ordered_json::parse(in)));
           } catch (const std::exception& e) {
             require(o, false, std::string("unparsable JSON: ") + e.what());
             return o;
           }
         }
         require(o, docs[0].dump() == docs[1].dump(), "JSON differs between --jobs 1 and --jobs 4");
         require(o, docs[0]["identities"].size() == qkoshy::registry().size(), "registry rows missing from report");
         std::filesystem::remove_all(dir);
         return o;
       }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.budget_s) o = {false, "over time budget"};
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, c.budget_s);
    std::cout << (o.ok ? "PASS" : "FAIL") << "  [" << (c.number < 10 ? " " : "") << c.number << "] " << c.title << "  ("
              << timing << ")";
    if (!o.ok) std::cout << "  -- " << o.detail;
    std::cout << std::endl;
    if (!o.ok) ++failed;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed ? 1 : 0;
}
