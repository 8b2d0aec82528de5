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

// Transition coverage against a declared catalog.
//
// A catalog partitions the state space of a machine into named equivalence
// classes and lists its abstract transitions, each given by a source class,
// an input pattern and a guard. Instrumenting a delta classifies every step
// it takes and counts hits per transition and per source class.

#ifndef ABPKIT_TESTKIT_COVERAGE_HPP_
#define ABPKIT_TESTKIT_COVERAGE_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "abpkit/errors.hpp"
#include "abpkit/runtime/delta.hpp"
#include "abpkit/show.hpp"

namespace abpkit::testkit {

// Edge of the class-level graph of a catalog.
struct ClassEdge {
  std::string transition;
  std::string from;
  std::string to;
};

template <class S, class I>
class TransitionCatalog {
 public:
  struct StateClass {
    std::string id;
    std::function<bool(const S&)> contains;
  };
  struct Transition {
    std::string id;
    std::string description;
    std::string source_class;
    std::string target_class;
    std::function<bool(const I&)> input_matches;
    std::function<bool(const S&, const I&)> guard;
  };

  explicit TransitionCatalog(std::string machine) : machine_(std::move(machine)) {}

  TransitionCatalog& state_class(std::string id, std::function<bool(const S&)> contains) {
    classes_.push_back({std::move(id), std::move(contains)});
    return *this;
  }

  TransitionCatalog& transition(std::string id, std::string description, std::string source,
                                std::string target, std::function<bool(const I&)> input_matches,
                                std::function<bool(const S&, const I&)> guard = nullptr) {
    if (!guard) guard = [](const S&, const I&) { return true; };
    transitions_.push_back({std::move(id), std::move(description), std::move(source),
                            std::move(target), std::move(input_matches), std::move(guard)});
    return *this;
  }

  const std::string& machine() const noexcept { return machine_; }
  const std::vector<StateClass>& classes() const noexcept { return classes_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }

  std::vector<std::string> transition_ids() const {
    std::vector<std::string> ids;
    for (const auto& t : transitions_) ids.push_back(t.id);
    return ids;
  }

  std::optional<std::string> class_of(const S& s) const {
    for (const auto& c : classes_) {
      if (c.contains(s)) return c.id;
    }
    return std::nullopt;
  }

  // Ids of all transitions matching the step; at most one for a
  // deterministic catalog.
  std::vector<std::string> matches(const S& s, const I& i) const {
    std::vector<std::string> ids;
    const auto cls = class_of(s);
    if (!cls) return ids;
    for (const auto& t : transitions_) {
      if (t.source_class == *cls && t.input_matches(i) && t.guard(s, i)) ids.push_back(t.id);
    }
    return ids;
  }

  // Raises UsageError naming the first step that matches more than one
  // transition.
  void check_deterministic(const std::vector<std::pair<S, I>>& steps) const {
    for (const auto& [s, i] : steps) {
      auto ids = matches(s, i);
      if (ids.size() > 1) {
        std::string all;
        for (const auto& id : ids) all += (all.empty() ? "" : ",") + id;
        throw UsageError("catalog '" + machine_ + "': state=" + show_string(s) +
                         " input=" + show_string(i) + " matches {" + all + "}");
      }
    }
  }

  std::vector<ClassEdge> class_graph() const {
    std::vector<ClassEdge> edges;
    for (const auto& t : transitions_) edges.push_back({t.id, t.source_class, t.target_class});
    return edges;
  }

 private:
  std::string machine_;
  std::vector<StateClass> classes_;
  std::vector<Transition> transitions_;
};

// Hit counts collected by instrumented deltas. Partial accumulators from
// independent runs combine with merge(), which is commutative and
// associative.
class CoverageAccumulator {
 public:
  void record_step(const std::optional<std::string>& transition,
                   const std::optional<std::string>& source_class);
  void record_verdict(bool passed);
  void merge(const CoverageAccumulator& other);

  std::map<std::string, std::size_t> transition_hits() const;
  std::map<std::string, std::size_t> class_hits() const;
  std::size_t unclassified() const;
  std::size_t passed() const;
  std::size_t failed() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::size_t> transitions_;
  std::map<std::string, std::size_t> classes_;
  std::size_t unclassified_ = 0;
  std::size_t passed_ = 0;
  std::size_t failed_ = 0;
};

struct CoverageReport {
  std::string machine;
  std::set<std::string> covered;
  std::set<std::string> uncovered;
  std::map<std::string, std::size_t> transition_hits;
  // Hits per source equivalence class; every declared class is listed.
  std::map<std::string, std::size_t> class_hits;
  std::size_t unclassified = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;

  std::size_t total() const noexcept { return covered.size() + uncovered.size(); }
  bool complete() const noexcept { return uncovered.empty(); }
};

CoverageReport make_report(const std::string& machine,
                           const std::vector<std::string>& transition_ids,
                           const std::vector<std::string>& class_ids,
                           const CoverageAccumulator& acc);

template <class S, class I>
CoverageReport make_report(const TransitionCatalog<S, I>& catalog,
                           const CoverageAccumulator& acc) {
  std::vector<std::string> classes;
  for (const auto& c : catalog.classes()) classes.push_back(c.id);
  return make_report(catalog.machine(), catalog.transition_ids(), classes, acc);
}

// A delta that behaves exactly like `delta` and records each step in the
// returned accumulator. Steps matching no catalog entry, or more than one,
// are counted as unclassified.
template <class S, class I, class O>
std::pair<runtime::Delta<S, I, O>, std::shared_ptr<CoverageAccumulator>> instrument(
    runtime::Delta<S, I, O> delta, TransitionCatalog<S, I> catalog) {
  auto acc = std::make_shared<CoverageAccumulator>();
  auto wrapped = [delta = std::move(delta), catalog = std::move(catalog), acc](const S& s,
                                                                               const I& i) {
    auto ids = catalog.matches(s, i);
    acc->record_step(ids.size() == 1 ? std::optional<std::string>(ids.front()) : std::nullopt,
                     catalog.class_of(s));
    return delta(s, i);
  };
  return {runtime::Delta<S, I, O>(std::move(wrapped)), acc};
}

using TransitionPath = std::vector<std::string>;

// Paths through the class graph from `start_class` in which every transition
// occurs at most `max_loop_unroll` times. All non-empty such paths are
// returned; when no transition leaves `start_class` the result is the single
// empty path.
std::set<TransitionPath> boundary_interior_paths(const std::vector<ClassEdge>& graph,
                                                 const std::string& start_class,
                                                 std::size_t max_loop_unroll = 1);

}  // namespace abpkit::testkit

#endif  // ABPKIT_TESTKIT_COVERAGE_HPP_
