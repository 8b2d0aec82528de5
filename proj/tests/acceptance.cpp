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

// Release acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "abp_oracles.hpp"
#include "abpkit/abp/medium.hpp"
#include "abpkit/abp/receiver.hpp"
#include "abpkit/abp/sender.hpp"
#include "abpkit/runtime/merge.hpp"
#include "abpkit/testkit/bundled.hpp"
#include "abpkit/testkit/catalogs.hpp"
#include "abpkit/testkit/scenario.hpp"
#include "abpkit/testkit/tables.hpp"
#include "abpkit/testkit/testers.hpp"
#include "commands.hpp"
#include "runtime_oracles.hpp"

namespace {

using namespace abpkit;
using abp::Payload;
using Clock = std::chrono::steady_clock;

// Pinned limits.
constexpr double kGoldenBudgetSeconds = 1.0;
constexpr double kIdentityBudgetSeconds = 10.0;
constexpr std::size_t kIdentitySeeds = 100;
constexpr std::size_t kIdentityMaxPayloads = 10;
constexpr double kIdentityDrop = 0.5;
constexpr std::size_t kMediumPairs = 1000;
constexpr std::size_t kMediumMaxPeriod = 8;
constexpr std::size_t kResendEvery = 4;
constexpr std::size_t kMergePairs = 200;
constexpr std::size_t kMergeSlots = 20;
constexpr std::size_t kRandomSuiteCount = 100;

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string data(const std::string& rel) { return std::string(ABPKIT_DATA_DIR) + "/" + rel; }

testkit::TableDocument bundled_table(std::string_view name) {
  for (const auto& f : testkit::bundled_tables()) {
    if (f.name == name) return testkit::parse_table(f.text, std::string(f.name));
  }
  throw std::runtime_error("missing bundled table " + std::string(name));
}

// ---- 1 --------------------------------------------------------------------

std::string golden_transitions(Check& c) {
  const auto t0 = Clock::now();
  const auto doc = bundled_table("sender.json");
  const auto delta = abp::sender_delta<Payload>();
  std::size_t passed = 0, cases = 0;
  for (const auto& tc : doc.cases) {
    if (tc.kind != testkit::TableCase::Kind::kTransition) continue;
    ++cases;
    testkit::TransitionCase<abp::SenderState<Payload>, abp::SenderIn<Payload>,
                            abp::SenderOut<Payload>>
        t{tc.id, testkit::codec::sender_state(tc.start), testkit::codec::sender_input(tc.inputs[0]),
          testkit::codec::sender_state(tc.expect_state), {}};
    for (const auto& o : tc.expect) t.expect_outputs.push_back(testkit::codec::sender_output(o));
    const auto v = testkit::trans_test(delta, t);
    if (v.passed) ++passed;
    c.expect(v.passed, tc.id + ": " + v.detail);
  }
  const double secs = seconds_since(t0);
  c.expect(cases == 8, "expected 8 transition rows, found " + std::to_string(cases));
  c.expect(secs < kGoldenBudgetSeconds, "took " + std::to_string(secs) + " s");
  std::ostringstream os;
  os << passed << "/" << cases << " rows in " << secs * 1000 << " ms";
  return os.str();
}

// ---- 2 --------------------------------------------------------------------

std::string transition_coverage(Check& c) {
  testkit::SuiteRunner runner;
  for (const auto& f : testkit::bundled_tables()) {
    for (const auto& r : runner.run(testkit::parse_table(f.text, std::string(f.name)))) {
      c.expect(r.passed, std::string(f.name) + "/" + r.id + " failed");
    }
  }
  std::ostringstream os;
  for (const auto& r : runner.coverage()) {
    c.expect(r.complete(), r.machine + " incomplete");
    c.expect(r.total() > 0, r.machine + " has an empty catalog");
    if (os.tellp() > 0) os << ", ";
    os << r.machine << " " << r.covered.size() << "/" << r.total();
  }
  const auto reports = runner.coverage();
  c.expect(reports.size() == 3 && reports[0].total() == 8, "sender catalog is not 8 transitions");
  return os.str();
}

// ---- 3 --------------------------------------------------------------------

std::string randomized_identity(Check& c) {
  const auto t0 = Clock::now();
  const testkit::GenerateBounds bounds{kIdentityMaxPayloads, 1000, kIdentityDrop,
                                       abp::kDefaultTimeout};
  std::size_t passed = 0, payloads = 0;
  for (std::uint64_t seed = 0; seed < kIdentitySeeds; ++seed) {
    const auto s = testkit::generate_scenario(seed, bounds);
    payloads += s.payloads().size();
    const auto r = testkit::check_identity(s);
    if (r.outcome == testkit::IdentityOutcome::kPass && r.warnings.empty()) ++passed;
    c.expect(r.outcome == testkit::IdentityOutcome::kPass,
             "seed " + std::to_string(seed) + ": " + testkit::to_string(r.outcome) + " " +
                 r.detail);
  }
  const double secs = seconds_since(t0);
  c.expect(secs < kIdentityBudgetSeconds, "took " + std::to_string(secs) + " s");
  std::ostringstream os;
  os << passed << "/" << kIdentitySeeds << " seeds, " << payloads << " payloads, drop "
     << kIdentityDrop << ", " << secs << " s";
  return os.str();
}

// ---- 4 --------------------------------------------------------------------

std::string retransmission_trace(Check& c) {
  const auto s = testkit::parse_scenario(read_file(data("scenarios/single_drop.json")), "single_drop");
  const auto r = testkit::check_identity(s);
  c.expect(r.outcome == testkit::IdentityOutcome::kPass, "identity: " + r.detail);

  std::ostringstream rendered;
  for (const auto& w : r.run.wires()) {
    rendered << w.name << ' '
             << stream::render_trace(stream::take_items(r.run.stream(w.name), SIZE_MAX)) << '\n';
  }
  const auto fixture = read_file(std::string(ABPKIT_FIXTURE_DIR) + "/single_drop_trace.txt");
  c.expect(rendered.str() == fixture, "trace differs from fixture:\n" + rendered.str());

  // Sends of payload 1 on ds, by slot.
  std::vector<std::size_t> send_slots;
  const auto& ds = r.run.wire(abp::wires::kDataSent).slots;
  for (std::size_t k = 0; k < ds.size(); ++k) {
    for (const auto& v : ds[k]) {
      if (v.signed_msg().payload == 1) send_slots.push_back(k);
    }
  }
  c.expect(send_slots.size() == 2, "expected one send and one resend");
  const std::size_t timeout = static_cast<std::size_t>(s.config.timeout);
  // The resend precedes the timeout-th tick after the first send.
  c.expect(send_slots.size() == 2 && send_slots[1] - send_slots[0] + 1 == timeout,
           "resend not on tick " + std::to_string(timeout) + " after the first send");
  const auto delivered = abpkit::test::payloads_on(r.run, abp::wires::kOutput);
  c.expect(delivered == std::vector<Payload>{1}, "expected exactly one delivery of 1");

  std::ostringstream os;
  os << "sends at slots";
  for (auto k : send_slots) os << ' ' << k;
  os << ", resend on tick " << (send_slots.size() == 2 ? send_slots[1] - send_slots[0] + 1 : 0)
     << " after first send, " << delivered.size() << " delivery";
  return os.str();
}

// ---- 5 --------------------------------------------------------------------

std::string medium_properties(Check& c) {
  std::mt19937 rng(2026);
  std::size_t checked = 0;
  for (std::size_t round = 0; round < kMediumPairs; ++round) {
    // Distinct payloads: a subsequence check then also excludes duplicates.
    std::vector<std::vector<Payload>> slots(1 + rng() % 20);
    std::vector<Payload> flat;
    for (auto& slot : slots) {
      slot.resize(rng() % 3);
      for (auto& p : slot) flat.push_back(p = static_cast<Payload>(flat.size()));
    }
    std::vector<bool> bits(std::max<std::size_t>(1, flat.size()));
    for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = rng() % 2;
    if (std::find(bits.begin(), bits.end(), true) == bits.end()) bits[0] = true;

    abp::OracleStream oracle = abp::OracleStream::all_pass();
    switch (round % 3) {
      case 0: oracle = abp::OracleStream::explicit_bits(bits); break;
      case 1: oracle = abp::OracleStream::cyclic(bits); break;
      default: oracle = abp::OracleStream::bernoulli(0.1 * static_cast<double>(rng() % 10), rng());
    }
    const auto out = stream::untime(abp::medium_component<Payload>(oracle, stream::inject_ticks(slots)),
                                    slots.size());
    c.expect(abpkit::test::is_subsequence(out, flat), "not a subsequence in round " +
                                                          std::to_string(round));
    if (round % 3 == 0) {
      c.expect(out == abpkit::test::medium_reference(bits, flat),
               "output differs from the reference fold in round " + std::to_string(round));
    }
    ++checked;
  }

  std::size_t fairness_cases = 0;
  for (std::size_t p = 1; p <= kMediumMaxPeriod; ++p) {
    for (std::size_t pass_at = 0; pass_at < p; ++pass_at) {
      std::vector<bool> bits(p, false);
      bits[pass_at] = true;
      std::vector<std::vector<Payload>> slots(kResendEvery * p);
      for (std::size_t k = 0; k < slots.size(); k += kResendEvery) slots[k] = {7};
      const auto out = stream::take_slots(
          abp::medium_component<Payload>(abp::OracleStream::cyclic(bits), stream::inject_ticks(slots)),
          slots.size());
      const bool delivered =
          std::any_of(out.begin(), out.end(), [](const auto& s) { return !s.empty(); });
      c.expect(delivered, "period " + std::to_string(p) + " pass at " + std::to_string(pass_at) +
                              ": no delivery within " + std::to_string(kResendEvery * p) +
                              " slots");
      ++fairness_cases;
    }
  }
  std::ostringstream os;
  os << checked << " subsequence pairs, " << fairness_cases << " fairness cases";
  return os.str();
}

// ---- 6 --------------------------------------------------------------------

template <class S, class I, class O>
void compare_instrumented(Check& c, const std::string& id, runtime::Delta<S, I, O> plain,
                          const testkit::TransitionCatalog<S, I>& catalog, const S& start,
                          const std::vector<I>& inputs) {
  auto [wrapped, acc] = testkit::instrument(plain, catalog);
  c.expect(runtime::trace_machine(start, wrapped, inputs) ==
               runtime::trace_machine(start, plain, inputs),
           "instrumented run of " + id + " differs");
}

std::string runtime_laws(Check& c) {
  std::mt19937 rng(6);
  for (std::size_t k = 0; k < kMergePairs; ++k) {
    const auto a = abpkit::test::random_slots(rng, kMergeSlots, 3);
    const auto b = abpkit::test::random_slots(rng, kMergeSlots, 3);
    const auto [da, db] =
        runtime::demux_timed(runtime::merge_timed(stream::inject_ticks(a), stream::inject_ticks(b)));
    c.expect(stream::take_slots(da, kMergeSlots) == a && stream::take_slots(db, kMergeSlots) == b,
             "merge/demux round trip failed for pair " + std::to_string(k));
  }

  const auto lifted = runtime::lift_timed<int, int, int>([](int s, int i) {
    return runtime::Step<int, int>{s + i, std::vector<int>(static_cast<std::size_t>(i % 3), i)};
  });
  const auto timed = abpkit::test::timer_probe_delta();
  std::size_t tick_runs = 0;
  for (std::size_t round = 0; round < 200; ++round) {
    std::vector<stream::Ticked<int>> in;
    for (std::size_t k = rng() % 40; k > 0; --k) {
      in.push_back(rng() % 3 ? stream::msg(static_cast<int>(1 + rng() % 6)) : stream::tick<int>());
    }
    const auto ticks = stream::tick_count(in);
    c.expect(stream::tick_count(runtime::run_machine(0, lifted, in).outputs) == ticks,
             "lift_timed changed the tick count");
    c.expect(stream::tick_count(
                 runtime::run_machine(runtime::TimerState<int>{0, runtime::kTimerDisabled}, timed, in)
                     .outputs) == ticks,
             "attach_timer changed the tick count");
    ++tick_runs;
  }

  for (int n : {1, 2, 3, 5}) {
    const auto actual = abpkit::test::timeout_ticks_actual(n, 12);
    c.expect(actual == abpkit::test::timeout_ticks_oracle(n, 12) && actual.size() == 1 &&
                 actual[0] == static_cast<std::size_t>(n),
             "timer law fails for SetTimer(" + std::to_string(n) + ")");
  }

  std::size_t cases = 0;
  for (const auto& f : testkit::bundled_tables()) {
    const auto doc = testkit::parse_table(f.text, std::string(f.name));
    for (const auto& tc : doc.cases) {
      const std::string id = std::string(f.name) + "/" + tc.id;
      namespace codec = testkit::codec;
      if (tc.machine == "sender") {
        std::vector<abp::SenderIn<Payload>> in;
        for (const auto& v : tc.inputs) in.push_back(codec::sender_input(v));
        compare_instrumented(c, id, abp::sender_delta<Payload>(), testkit::sender_catalog(),
                             codec::sender_state(tc.start), in);
      } else if (tc.machine == "medium") {
        std::vector<stream::Ticked<Payload>> in;
        for (const auto& v : tc.inputs) in.push_back(codec::medium_message(v));
        compare_instrumented(c, id, abp::timed_medium_delta<Payload>(), testkit::medium_catalog(),
                             codec::medium_state(tc.start), in);
      } else {
        std::vector<abp::SignedMsg<Payload>> in;
        for (const auto& v : tc.inputs) in.push_back(codec::signed_msg(v));
        compare_instrumented(c, id, abp::receiver_delta<Payload>(), testkit::receiver_catalog(),
                             codec::receiver_state(tc.start), in);
      }
      ++cases;
    }
  }
  std::ostringstream os;
  os << kMergePairs << " merge/demux pairs, " << tick_runs << " tick-count runs, timer n=1,2,3,5, "
     << cases << " instrumented cases";
  return os.str();
}

// ---- 7 --------------------------------------------------------------------

std::string determinism(Check& c) {
  auto run_cli = [](std::vector<std::string> args, int& code) {
    std::ostringstream out, err;
    code = cli::run(args, out, err);
    return out.str();
  };
  int c1 = 0, c2 = 0;
  const std::vector<std::string> sim{"simulate", "--scenario", data("scenarios/lossy_bernoulli.json"),
                                     "--format", "json"};
  const auto a = run_cli(sim, c1), b = run_cli(sim, c2);
  c.expect(c1 == 0 && c2 == 0, "simulate exited non-zero");
  c.expect(!a.empty() && a == b, "simulate trace documents differ");

  const std::vector<std::string> rnd{"test", "--no-bundled", "--seed", "1", "--count",
                                     std::to_string(kRandomSuiteCount), "--format", "json"};
  const auto x = run_cli(rnd, c1), y = run_cli(rnd, c2);
  c.expect(c1 == 0 && c2 == 0, "randomized suite exited non-zero");
  c.expect(!x.empty() && x == y, "randomized reports differ");
  std::ostringstream os;
  os << "simulate " << a.size() << " bytes, randomized report " << x.size() << " bytes, identical";
  return os.str();
}

// ---- 8 --------------------------------------------------------------------

std::string negative_control(Check& c) {
  const auto path = data("scenarios/negative/mismatched_initial_bit.json");
  const auto s = testkit::parse_scenario(read_file(path), "mismatched_initial_bit");
  const auto r = testkit::check_identity(s);
  c.expect(r.outcome == testkit::IdentityOutcome::kFail,
           std::string("check_identity gave ") + testkit::to_string(r.outcome));
  std::ostringstream out, err;
  const int code = cli::run({"test", "--no-bundled", "--scenario", path}, out, err);
  c.expect(code == cli::kExitFailure, "test exited " + std::to_string(code));
  return std::string(testkit::to_string(r.outcome)) + " (" + r.detail + "), test exit " +
         std::to_string(code);
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<std::string(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {"golden sender transitions", golden_transitions},
      {"transition coverage", transition_coverage},
      {"randomized untimed identity", randomized_identity},
      {"single-drop retransmission trace", retransmission_trace},
      {"medium subsequence and fairness", medium_properties},
      {"runtime laws", runtime_laws},
      {"determinism", determinism},
      {"negative control", negative_control},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check c;
    std::string summary;
    try {
      summary = criteria[k].run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << "  " << k + 1 << ". " << criteria[k].name;
    if (!summary.empty()) std::cout << "  [" << summary << "]";
    if (!c.ok) std::cout << "\n      " << c.why.str();
    std::cout << '\n';
    if (!c.ok) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << '\n';
  return failures == 0 ? 0 : 1;
}
