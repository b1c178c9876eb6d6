#pragma once

// Command-line front end. run() never exits the process; it returns
// 0 (all checks passed), 1 (a check failed or a counterexample was found) or
// 2 (usage or configuration error).

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qkoshy/conjectures.hpp"
#include "qkoshy/identities.hpp"
#include "qkoshy/partitions.hpp"
#include "qkoshy/paths.hpp"
#include "qkoshy/qcore.hpp"

namespace qkoshy::cli {

enum class Format { text, json, csv };

/// Usage errors; run() maps them to exit status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// "a..b" (inclusive) or a single value "a".
inline std::pair<long, long> parse_range(const std::string& s) {
  auto to_long = [&](const std::string& t) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size()) throw UsageError("bad range '" + s + "' (expected a..b or a)");
    return v;
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const long v = to_long(s);
    return {v, v};
  }
  return {to_long(s.substr(0, dots)), to_long(s.substr(dots + 2))};
}

inline long parse_long(const std::string& s) {
  auto [a, b] = parse_range(s);
  if (a != b) throw UsageError("expected an integer, got '" + s + "'");
  return a;
}

namespace detail {

inline std::string text_line(const IdentityReport& r) {
  std::ostringstream os;
  os << (r.status == Status::pass ? "PASS" : r.status == Status::fail ? "FAIL" : "SKIP") << "  " << r.identity_id;
  for (std::size_t i = 0; i + 1 < r.params.size(); i += 2) {
    const auto& name = r.params[i].first;
    os << "  " << name.substr(0, name.size() - 4) << "=" << r.params[i].second << ".." << r.params[i + 1].second;
  }
  os << "  cells=" << r.cells_checked << "  (" << r.elapsed_ms << " ms)\n";
  if (r.counterexample) {
    os << "  counterexample at";
    for (const auto& [k, v] : r.counterexample->cell) os << " " << k << "=" << v;
    os << "\n    left:       " << r.counterexample->left << "\n    right:      " << r.counterexample->right
       << "\n    difference: " << r.counterexample->difference << "\n";
  }
  return os.str();
}

inline std::string text_block(const SweepReport& r) {
  std::ostringstream os;
  os << (r.passed() ? "PASS" : "FAIL") << "  sweep " << r.case_id << "  m<=" << r.grid.m_max << " n<=" << r.grid.n_max;
  if (r.case_id == "even-n") os << " j<=" << r.grid.j_max;
  os << "  cells=" << r.verified_cells;
  if (r.consequence_cells) os << " consequence_cells=" << r.consequence_cells;
  os << "  counterexamples=" << r.counterexamples.size() << "  frontier=(" << r.frontier.m_max << "," << r.frontier.n_max
     << "," << r.frontier.j_max << ")  (" << r.elapsed_ms << " ms)\n";
  for (const auto& c : r.counterexamples) {
    os << "  counterexample";
    for (const auto& [k, v] : c.params) os << " " << k << "=" << v;
    os << ": " << c.reason;
    if (c.first_violation) os << " at q^" << *c.first_violation;
    os << "\n    " << c.polynomial << "\n";
  }
  if (r.passed()) os << "  (no counterexample on this grid: evidence, not proof)\n";
  return os.str();
}

inline std::string sweep_csv(const SweepReport& r) {
  std::string s = "case,m_max,n_max,j_max,status,verified_cells,consequence_cells,counterexamples,elapsed_ms\n";
  s += r.case_id + "," + std::to_string(r.grid.m_max) + "," + std::to_string(r.grid.n_max) + "," +
       std::to_string(r.grid.j_max) + "," + (r.passed() ? "pass" : "fail") + "," + std::to_string(r.verified_cells) + "," +
       std::to_string(r.consequence_cells) + "," + std::to_string(r.counterexamples.size()) + "," +
       std::to_string(r.elapsed_ms) + "\n";
  return s;
}

inline IntPolynomial show_poly(const std::string& subject, const std::vector<long>& a) {
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (a.size() < lo || a.size() > hi)
      throw UsageError("show " + subject + " takes " + std::to_string(lo) + (lo == hi ? "" : "-" + std::to_string(hi)) +
                       " integer argument(s)");
  };
  if (subject == "qbinom") {
    need(2, 2);
    return q_binomial(a[0], a[1]);
  }
  if (subject == "qcatalan") {
    need(1, 1);
    return q_catalan(a[0]);
  }
  if (subject == "narayana") {
    need(1, 1);
    return narayana_poly(a[0]);
  }
  if (subject == "qballot") {
    need(2, 2);
    return q_ballot(a[0], a[1]);
  }
  if (subject == "cyclotomic") {
    need(1, 1);
    return cyclotomic(a[0]);
  }
  if (subject == "tterm") {
    need(2, 3);
    return t_value(a[0], a[1], a.size() == 3 ? a[2] : 1);
  }
  if (subject == "conjecture-poly") {
    need(2, 3);
    const auto c = a[1] % 2 ? ConjectureCase::odd_n : ConjectureCase::even_n;
    if (c == ConjectureCase::even_n && a.size() != 3) throw UsageError("conjecture-poly with even n needs m n j");
    return conjecture_poly(c, a[0], a[1], a.size() == 3 ? a[2] : 0);
  }
  throw UsageError("unknown show subject '" + subject +
                   "' (qbinom, qcatalan, narayana, qballot, cyclotomic, tterm, conjecture-poly)");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of q-analogues of Koshy's formula", "qkoshy"};
  app.require_subcommand(1);

  std::string format_name = "text";
  unsigned jobs = 0;
  std::string output_path;
  bool force = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--jobs", jobs, "worker threads (default: QKOSHY_JOBS or hardware)")->check(CLI::PositiveNumber);
    sub->add_option("--output", output_path, "write the report here instead of stdout");
  };

  std::vector<std::string> ids;
  std::map<std::string, std::string> ranges;
  auto* verify_cmd = app.add_subcommand("verify", "run registry checks");
  verify_cmd->add_option("--id", ids, "identity id (repeatable)")->required();
  for (const char* p : {"n", "m", "r", "j"})
    verify_cmd->add_option(std::string("--") + p, ranges[p], std::string("range for ") + p + " (a..b or a)");
  verify_cmd->add_flag("--force", force, "lift the registry scale guards");
  add_common(verify_cmd);

  std::string case_id;
  long m_max = kDefaultSweepMax, n_max = kDefaultSweepMax, j_max = kDefaultSweepJMax;
  std::string frontier_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "counterexample sweep for the unimodality conjecture");
  sweep_cmd->add_option("--case", case_id, "odd-n | even-n")->required();
  sweep_cmd->add_option("--m-max", m_max)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--j-max", j_max)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--frontier", frontier_path, "frontier file to extend and update");
  add_common(sweep_cmd);

  std::string subject;
  std::vector<std::string> subject_args;
  auto* show_cmd = app.add_subcommand("show", "render a q-object");
  show_cmd->add_option("subject", subject)->required();
  show_cmd->add_option("args", subject_args);
  add_common(show_cmd);

  bool strict = false;
  auto* enum_cmd = app.add_subcommand("enum", "list dyck / elevated paths or partitions");
  enum_cmd->add_option("subject", subject, "dyck N | elevated N | partitions MAX_PART LENGTH")->required();
  enum_cmd->add_option("args", subject_args);
  enum_cmd->add_flag("--strict", strict, "partitions with distinct parts");
  add_common(enum_cmd);

  auto* all_cmd = app.add_subcommand("all", "full registry at default ranges plus the default sweeps");
  add_common(all_cmd);

  std::ostringstream report;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(std::move(rev));
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n" << "hint: run 'qkoshy --help'\n";
      return 2;
    }
    const Format format = format_name == "json" ? Format::json : format_name == "csv" ? Format::csv : Format::text;
    VerifyOptions vopt;
    vopt.jobs = jobs;
    vopt.force = force;
    int status = 0;

    if (verify_cmd->parsed()) {
      Bounds overrides;
      for (const auto& [name, text] : ranges)
        if (!text.empty()) overrides[name] = parse_range(text);
      for (const auto& [name, _] : overrides) {
        bool used = false;
        for (const auto& id : ids)
          for (const auto& p : find_identity(id).params) used = used || p.name == name;
        if (!used) throw UsageError("no selected identity takes --" + name);
      }
      std::vector<IdentityReport> reps;
      for (const auto& id : ids) {
        Bounds mine;
        for (const auto& p : find_identity(id).params)
          if (overrides.count(p.name)) mine[p.name] = overrides[p.name];
        reps.push_back(verify(id, mine, vopt));
        if (reps.back().status == Status::fail) status = 1;
      }
      if (format == Format::json) {
        if (reps.size() == 1) {
          report << to_json(reps.front()).dump(2) << "\n";
        } else {
          nlohmann::ordered_json arr = nlohmann::ordered_json::array();
          for (const auto& r : reps) arr.push_back(to_json(r));
          report << arr.dump(2) << "\n";
        }
      } else if (format == Format::csv) {
        report << csv_header() << "\n";
        for (const auto& r : reps) report << to_csv_row(r) << "\n";
      } else {
        for (const auto& r : reps) report << detail::text_line(r);
      }
    } else if (sweep_cmd->parsed()) {
      const auto c = parse_case(case_id);
      SweepOptions sopt;
      sopt.jobs = jobs;
      const auto rep = frontier_path.empty() ? sweep(c, m_max, n_max, j_max, sopt)
                                             : sweep_with_frontier(c, m_max, n_max, j_max, frontier_path, sopt);
      if (!rep.passed()) status = 1;
      if (format == Format::json)
        report << to_json(rep).dump(2) << "\n";
      else if (format == Format::csv)
        report << detail::sweep_csv(rep);
      else
        report << detail::text_block(rep);
    } else if (show_cmd->parsed()) {
      std::vector<long> a;
      for (const auto& s : subject_args) a.push_back(parse_long(s));
      const auto p = detail::show_poly(subject, a);
      if (format == Format::json) {
        nlohmann::ordered_json j;
        j["subject"] = subject;
        j["args"] = a;
        j["polynomial"] = to_string(p);
        j["coefficients"] = nlohmann::ordered_json::array();
        for (const auto& c : p.coeffs()) j["coefficients"].push_back(c.get_str());
        report << j.dump(2) << "\n";
      } else if (format == Format::csv) {
        report << "power,coefficient\n";
        for (std::size_t i = 0; i < p.size(); ++i) report << i << "," << p.coeff(i).get_str() << "\n";
      } else {
        report << to_string(p) << "\n";
      }
    } else if (enum_cmd->parsed()) {
      std::vector<long> a;
      for (const auto& s : subject_args) a.push_back(parse_long(s));
      std::vector<std::string> items;
      if (subject == "dyck" || subject == "elevated") {
        if (a.size() != 1) throw UsageError("enum " + subject + " takes N");
        for (const auto& p : enumerate(subject == "dyck" ? PathFamily::dyck : PathFamily::elevated, a[0]))
          items.push_back(p.str());
      } else if (subject == "partitions") {
        if (a.size() != 2) throw UsageError("enum partitions takes MAX_PART LENGTH");
        for (const auto& p : enumerate_partitions(a[0], LengthSpec::exactly(a[1]), strict)) items.push_back(to_string(p));
      } else {
        throw UsageError("unknown enum subject '" + subject + "' (dyck, elevated, partitions)");
      }
      if (format == Format::json) {
        report << nlohmann::ordered_json(items).dump(2) << "\n";
      } else {
        if (format == Format::csv) report << "item\n";
        for (const auto& s : items) report << (format == Format::csv ? "\"" + s + "\"" : s) << "\n";
      }
    } else if (all_cmd->parsed()) {
      std::vector<IdentityReport> reps;
      for (const auto& row : registry()) {
        reps.push_back(verify(row.id, {}, vopt));
        if (reps.back().status == Status::fail) status = 1;
        err << detail::text_line(reps.back());
      }
      SweepOptions sopt;
      sopt.jobs = jobs;
      std::vector<SweepReport> sweeps;
      for (auto c : {ConjectureCase::odd_n, ConjectureCase::even_n}) {
        sweeps.push_back(sweep(c, kDefaultSweepMax, kDefaultSweepMax, kDefaultSweepJMax, sopt));
        if (!sweeps.back().passed()) status = 1;
        err << detail::text_block(sweeps.back());
      }
      if (format == Format::json) {
        nlohmann::ordered_json j;
        j["identities"] = nlohmann::ordered_json::array();
        for (const auto& r : reps) j["identities"].push_back(to_json(r));
        j["sweeps"] = nlohmann::ordered_json::array();
        for (const auto& s : sweeps) j["sweeps"].push_back(to_json(s));
        report << j.dump(2) << "\n";
      } else if (format == Format::csv) {
        report << csv_header() << "\n";
        for (const auto& r : reps) report << to_csv_row(r) << "\n";
        for (const auto& s : sweeps) report << detail::sweep_csv(s);
      } else {
        for (const auto& r : reps) report << detail::text_line(r);
        for (const auto& s : sweeps) report << detail::text_block(s);
      }
    }

    if (output_path.empty()) {
      out << report.str();
    } else {
      std::ofstream f(output_path, std::ios::trunc);
      if (!(f << report.str())) {
        err << "error: cannot write " << output_path << "\n";
        return 2;
      }
    }
    return status;
  } catch (const UnknownIdentity& e) {
    err << "error: " << e.what() << "\nhint: see the identity list in README.md\n";
  } catch (const ScaleLimit& e) {
    err << "error: " << e.what() << "\nhint: narrow the range or pass --force\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

inline int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qkoshy::cli
