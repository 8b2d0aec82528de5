// Copyright 2026 The abpkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "abpkit/errors.hpp"
#include "abpkit/show.hpp"
#include "abpkit/testkit/bundled.hpp"
#include "abpkit/testkit/scenario.hpp"
#include "abpkit/testkit/tables.hpp"

namespace abpkit::cli {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

using json = nlohmann::ordered_json;
using testkit::CoverageReport;
using testkit::IdentityOutcome;
using testkit::ScenarioSpec;

struct Options {
  std::string format = "human";
  std::string out_path;
  bool verbose = false;
  std::vector<std::string> scenarios;
  std::vector<std::string> tables;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> count;
  std::optional<double> drop;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> max_payloads;
  std::vector<std::string> require;
  bool no_bundled = false;
};

struct VerdictRecord {
  std::string id;
  std::string kind;
  bool passed = false;
  bool model_failure = false;
  std::string detail;
  std::vector<testkit::StepVerdict> steps;
};

class Style {
 public:
  explicit Style(bool color) : color_(color) {}
  std::string pass(std::string_view s) const { return paint("32", s); }
  std::string fail(std::string_view s) const { return paint("31", s); }
  std::string warn(std::string_view s) const { return paint("33", s); }

 private:
  std::string paint(const char* code, std::string_view s) const {
    if (!color_) return std::string(s);
    return std::string("\033[") + code + "m" + std::string(s) + "\033[0m";
  }
  bool color_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f || !(f << text)) throw UsageError("cannot write '" + o.out_path + "'");
}

std::string hex_digest(std::string_view data) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(data);
  return os.str();
}

testkit::GenerateBounds bounds_from(const Options& o) {
  testkit::GenerateBounds b;
  if (o.drop) b.drop_probability = *o.drop;
  if (o.horizon) b.max_horizon = *o.horizon;
  if (o.max_payloads) b.max_payloads = *o.max_payloads;
  return b;
}

json meta_json(std::optional<std::uint64_t> seed, std::optional<std::string> scenario,
               const std::string& digest, const std::vector<std::string>& warnings) {
  json m;
  m["tool"] = kToolName;
  m["version"] = kVersion;
  m["seed"] = seed ? json(*seed) : json(nullptr);
  m["scenario"] = scenario ? json(*scenario) : json(nullptr);
  m["digest"] = digest;
  m["warnings"] = warnings;
  return m;
}

json wires_json(const abp::AbpRun& run) {
  json wires = json::array();
  for (const auto& w : run.wires()) {
    json slots = json::array();
    for (const auto& slot : w.slots) {
      json items = json::array();
      for (const auto& v : slot) items.push_back(show_string(v));
      slots.push_back(std::move(items));
    }
    wires.push_back({{"name", w.name}, {"slots", std::move(slots)}});
  }
  return wires;
}

json verdicts_json(const std::vector<VerdictRecord>& vs) {
  json out = json::array();
  for (const auto& v : vs) {
    json j{{"id", v.id}, {"kind", v.kind}, {"passed", v.passed}, {"detail", v.detail}};
    if (v.model_failure) j["modelFailure"] = true;
    if (!v.steps.empty()) {
      json steps = json::array();
      for (const auto& s : v.steps) {
        steps.push_back({{"index", s.index},
                         {"passed", s.passed},
                         {"afterDivergence", s.after_divergence},
                         {"detail", s.detail}});
      }
      j["steps"] = std::move(steps);
    }
    out.push_back(std::move(j));
  }
  return out;
}

json coverage_json(const std::vector<CoverageReport>& reports,
                   const std::set<std::string>& required) {
  json out = json::array();
  for (const auto& r : reports) {
    out.push_back({{"machine", r.machine},
                   {"required", required.count(r.machine) > 0},
                   {"covered", r.covered},
                   {"uncovered", r.uncovered},
                   {"transitionHits", r.transition_hits},
                   {"classHits", r.class_hits},
                   {"unclassified", r.unclassified},
                   {"passed", r.passed},
                   {"failed", r.failed}});
  }
  return out;
}

void render_coverage(std::ostream& os, const std::vector<CoverageReport>& reports,
                     const std::set<std::string>& required, const Style& style) {
  for (const auto& r : reports) {
    std::ostringstream ratio;
    ratio << r.covered.size() << '/' << r.total();
    os << std::left << std::setw(10) << r.machine
       << (r.complete() ? style.pass(ratio.str()) : style.fail(ratio.str()))
       << " transitions covered" << (required.count(r.machine) ? "" : " (not required)") << '\n';
    for (const auto& [id, n] : r.transition_hits) os << "  " << std::setw(18) << id << n << '\n';
    os << "  classes:";
    for (const auto& [id, n] : r.class_hits) os << ' ' << id << '=' << n;
    os << '\n';
    if (!r.uncovered.empty()) {
      os << "  uncovered:";
      for (const auto& id : r.uncovered) os << ' ' << id;
      os << '\n';
    }
    if (r.unclassified) os << "  unclassified steps: " << r.unclassified << '\n';
  }
}

void render_verdicts(std::ostream& os, const std::vector<VerdictRecord>& vs, const Style& style,
                     bool verbose) {
  std::size_t passed = 0;
  for (const auto& v : vs) {
    if (v.passed) ++passed;
    if (v.passed && !verbose) continue;
    os << (v.passed ? style.pass("PASS") : style.fail("FAIL")) << "  " << v.id << '\n';
    if (!v.detail.empty()) os << "      " << v.detail << '\n';
    if (verbose) {
      for (const auto& s : v.steps) {
        os << "      step " << s.index << ": " << (s.passed ? "ok" : "mismatch")
           << (s.after_divergence ? " (after divergence)" : "");
        if (!s.detail.empty()) os << " - " << s.detail;
        os << '\n';
      }
    }
  }
  os << passed << " passed, " << vs.size() - passed << " failed\n";
}

std::vector<testkit::TableDocument> load_tables(const Options& o) {
  std::vector<testkit::TableDocument> docs;
  if (!o.no_bundled) {
    for (const auto& f : testkit::bundled_tables()) {
      docs.push_back(testkit::parse_table(f.text, std::string(f.name)));
    }
  }
  for (const auto& path : o.tables) docs.push_back(testkit::parse_table(read_file(path), path));
  return docs;
}

std::vector<VerdictRecord> run_tables(testkit::SuiteRunner& runner,
                                      const std::vector<testkit::TableDocument>& docs) {
  std::vector<VerdictRecord> out;
  for (const auto& doc : docs) {
    for (auto& r : runner.run(doc)) {
      out.push_back({doc.name + "/" + r.id, r.path ? "path" : "transition", r.passed,
                     r.model_failure, r.detail, r.steps});
    }
  }
  return out;
}

// Test-mode verdict for one scenario: fairness warnings and inconclusive
// horizons count as failures.
VerdictRecord scenario_verdict(const std::string& id, const ScenarioSpec& s) {
  VerdictRecord v{id, "identity", false, false, {}, {}};
  try {
    const auto r = testkit::check_identity(s);
    v.passed = r.outcome == IdentityOutcome::kPass && r.warnings.empty();
    std::ostringstream d;
    if (r.outcome != IdentityOutcome::kPass) d << testkit::to_string(r.outcome) << ": " << r.detail;
    for (const auto& w : r.warnings) d << (d.tellp() > 0 ? "; " : "") << "warning: " << w;
    v.detail = d.str();
  } catch (const ModelFailure& e) {
    v.model_failure = true;
    v.detail = e.what();
  }
  return v;
}

std::set<std::string> required_machines(const Options& o) {
  const auto& all = testkit::machine_names();
  if (o.require.empty()) return {all.begin(), all.end()};
  std::set<std::string> out;
  for (const auto& m : o.require) {
    if (std::find(all.begin(), all.end(), m) == all.end()) {
      throw UsageError("unknown machine '" + m + "' for --require-coverage");
    }
    out.insert(m);
  }
  return out;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err, const Style& style) {
  if (o.scenarios.empty() == !o.seed) {
    throw UsageError("simulate needs exactly one of --scenario or --seed");
  }
  ScenarioSpec s = o.seed ? testkit::generate_scenario(*o.seed, bounds_from(o))
                          : testkit::parse_scenario(read_file(o.scenarios.front()),
                                                    o.scenarios.front());
  if (!o.seed && o.horizon) {
    s.horizon = *o.horizon;
    testkit::validate(s);
  }

  const auto r = testkit::check_identity(s);
  for (const auto& w : r.warnings) err << style.warn("warning: ") << w << '\n';
  const std::string digest = hex_digest(testkit::scenario_to_json(s));
  std::ostringstream detail;
  detail << "delivered " << r.delivered.size() << " of " << r.expected.size() << " payloads";
  if (!r.detail.empty()) detail << "; " << r.detail;
  const std::vector<VerdictRecord> verdicts{
      {"identity", "identity", r.outcome == IdentityOutcome::kPass, false, detail.str(), {}}};

  std::ostringstream doc;
  if (o.format == "json") {
    json j;
    j["meta"] = meta_json(s.seed, s.name, digest, r.warnings);
    j["wires"] = wires_json(r.run);
    j["verdicts"] = verdicts_json(verdicts);
    j["verdicts"][0]["outcome"] = testkit::to_string(r.outcome);
    j["coverage"] = nullptr;
    doc << j.dump(2) << '\n';
  } else {
    doc << "scenario " << s.name << " (digest " << digest << ", " << s.horizon << " slots)\n";
    for (const auto& w : r.run.wires()) {
      doc << std::left << std::setw(6) << w.name << ' ';
      bool first = true;
      for (const auto& slot : w.slots) {
        for (const auto& v : slot) {
          doc << (first ? "" : " ") << show_string(v);
          first = false;
        }
        doc << (first ? "~" : " ~");
        first = false;
      }
      doc << '\n';
    }
    const std::string outcome = testkit::to_string(r.outcome);
    doc << "identity: "
        << (r.outcome == IdentityOutcome::kPass ? style.pass(outcome) : style.fail(outcome))
        << " (" << detail.str() << ")\n";
  }
  emit(o, out, doc.str());
  return kExitOk;
}

int cmd_test(const Options& o, std::ostream& out, const Style& style) {
  const auto docs = load_tables(o);
  std::vector<std::pair<std::string, ScenarioSpec>> scenarios;
  if (!o.no_bundled) {
    for (const auto& f : testkit::bundled_scenarios()) {
      scenarios.emplace_back("scenario/" + std::string(f.name),
                             testkit::parse_scenario(f.text, std::string(f.name)));
    }
  }
  for (const auto& path : o.scenarios) {
    scenarios.emplace_back("scenario/" + path, testkit::parse_scenario(read_file(path), path));
  }
  const bool randomized = o.seed.has_value() || o.count.has_value();
  const std::uint64_t base = o.seed.value_or(0);
  if (randomized) {
    const auto bounds = bounds_from(o);
    for (std::size_t k = 0; k < o.count.value_or(100); ++k) {
      const std::uint64_t seed = base + k;
      scenarios.emplace_back("random/" + std::to_string(seed),
                             testkit::generate_scenario(seed, bounds));
    }
  }

  testkit::SuiteRunner runner;
  auto verdicts = run_tables(runner, docs);
  std::string canonical;
  for (const auto& [id, s] : scenarios) {
    verdicts.push_back(scenario_verdict(id, s));
    canonical += testkit::scenario_to_json(s);
  }
  const bool ok = std::all_of(verdicts.begin(), verdicts.end(),
                              [](const VerdictRecord& v) { return v.passed; });
  const auto reports = runner.coverage();
  const auto required = required_machines(o);

  std::ostringstream doc;
  if (o.format == "json") {
    json j;
    j["meta"] = meta_json(randomized ? std::optional(base) : std::nullopt, std::nullopt,
                          hex_digest(canonical), {});
    j["wires"] = json::array();
    j["verdicts"] = verdicts_json(verdicts);
    j["coverage"] = coverage_json(reports, required);
    doc << j.dump(2) << '\n';
  } else {
    render_verdicts(doc, verdicts, style, o.verbose);
  }
  emit(o, out, doc.str());
  return ok ? kExitOk : kExitFailure;
}

int cmd_coverage(const Options& o, std::ostream& out, const Style& style) {
  const auto required = required_machines(o);
  const auto docs = load_tables(o);
  testkit::SuiteRunner runner;
  const auto verdicts = run_tables(runner, docs);
  const auto reports = runner.coverage();
  const bool ok = std::all_of(reports.begin(), reports.end(), [&](const CoverageReport& r) {
    return !required.count(r.machine) || r.complete();
  });

  std::ostringstream doc;
  if (o.format == "json") {
    json j;
    j["meta"] = meta_json(std::nullopt, std::nullopt, hex_digest(""), {});
    j["wires"] = json::array();
    j["verdicts"] = verdicts_json(verdicts);
    j["coverage"] = coverage_json(reports, required);
    doc << j.dump(2) << '\n';
  } else {
    render_coverage(doc, reports, required, style);
    for (const auto& v : verdicts) {
      if (!v.passed) doc << style.fail("FAIL") << "  " << v.id << "  " << v.detail << '\n';
    }
  }
  emit(o, out, doc.str());
  return ok ? kExitOk : kExitFailure;
}

int cmd_generate(const Options& o, std::ostream& out) {
  const auto s = testkit::generate_scenario(*o.seed, bounds_from(o));
  emit(o, out, testkit::scenario_to_json(s));
  return kExitOk;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"human", "json"}));
  cmd->add_option("--out", o.out_path, "Write the report to this file");
  cmd->add_flag("-v,--verbose", o.verbose, "Show passing cases and per-step detail");
}

void add_bounds(CLI::App* cmd, Options& o) {
  cmd->add_option("--drop", o.drop, "Drop probability of both media, in [0,1)");
  cmd->add_option("--horizon", o.horizon, "Slot horizon bound");
  cmd->add_option("--max-payloads", o.max_payloads, "Most payloads per generated scenario");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Terminal& term) {
  Options o;
  CLI::App app{"Simulate and test the alternating bit protocol", std::string(kToolName)};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(kVersion));

  auto* simulate = app.add_subcommand("simulate", "Run a scenario and print the wire trace");
  add_common(simulate, o);
  auto* sim_scenario = simulate->add_option("--scenario", o.scenarios, "Scenario file")
                           ->expected(1);
  auto* sim_seed = simulate->add_option("--seed", o.seed, "Generate the scenario from a seed");
  sim_scenario->excludes(sim_seed);
  add_bounds(simulate, o);

  auto* test = app.add_subcommand("test", "Run test tables and identity scenarios");
  add_common(test, o);
  test->add_option("--tables", o.tables, "Additional test tables");
  test->add_option("--scenario", o.scenarios, "Additional scenario files");
  test->add_option("--seed", o.seed, "Base seed of the randomized suite");
  test->add_option("--count", o.count, "Number of randomized scenarios (default 100)");
  test->add_flag("--no-bundled", o.no_bundled, "Skip the bundled tables and scenarios");
  test->add_option("--require-coverage", o.require, "Machines listed in the coverage summary");
  add_bounds(test, o);

  auto* coverage = app.add_subcommand("coverage", "Report transition coverage of test tables");
  add_common(coverage, o);
  coverage->add_option("--tables", o.tables, "Additional test tables");
  coverage->add_flag("--no-bundled", o.no_bundled, "Skip the bundled tables");
  coverage->add_option("--require-coverage", o.require,
                       "Machines that must be fully covered (default all)");

  auto* generate = app.add_subcommand("generate", "Write a random scenario");
  add_common(generate, o);
  generate->add_option("--seed", o.seed, "Scenario seed")->required();
  add_bounds(generate, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Style style(term.color && o.out_path.empty());
  try {
    if (simulate->parsed()) return cmd_simulate(o, out, err, style);
    if (test->parsed()) return cmd_test(o, out, style);
    if (coverage->parsed()) return cmd_coverage(o, out, style);
    return cmd_generate(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ModelFailure& e) {
    err << "model failure: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace abpkit::cli
