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

#include "abpkit/testkit/coverage.hpp"

namespace abpkit::testkit {

void CoverageAccumulator::record_step(const std::optional<std::string>& transition,
                                      const std::optional<std::string>& source_class) {
  std::lock_guard lock(mu_);
  if (transition) {
    ++transitions_[*transition];
  } else {
    ++unclassified_;
  }
  if (source_class) ++classes_[*source_class];
}

void CoverageAccumulator::record_verdict(bool passed) {
  std::lock_guard lock(mu_);
  ++(passed ? passed_ : failed_);
}

void CoverageAccumulator::merge(const CoverageAccumulator& other) {
  if (&other == this) {
    std::lock_guard lock(mu_);
    for (auto& [k, n] : transitions_) n *= 2;
    for (auto& [k, n] : classes_) n *= 2;
    unclassified_ *= 2;
    passed_ *= 2;
    failed_ *= 2;
    return;
  }
  std::scoped_lock lock(mu_, other.mu_);
  for (const auto& [k, n] : other.transitions_) transitions_[k] += n;
  for (const auto& [k, n] : other.classes_) classes_[k] += n;
  unclassified_ += other.unclassified_;
  passed_ += other.passed_;
  failed_ += other.failed_;
}

std::map<std::string, std::size_t> CoverageAccumulator::transition_hits() const {
  std::lock_guard lock(mu_);
  return transitions_;
}

std::map<std::string, std::size_t> CoverageAccumulator::class_hits() const {
  std::lock_guard lock(mu_);
  return classes_;
}

std::size_t CoverageAccumulator::unclassified() const {
  std::lock_guard lock(mu_);
  return unclassified_;
}

std::size_t CoverageAccumulator::passed() const {
  std::lock_guard lock(mu_);
  return passed_;
}

std::size_t CoverageAccumulator::failed() const {
  std::lock_guard lock(mu_);
  return failed_;
}

CoverageReport make_report(const std::string& machine,
                           const std::vector<std::string>& transition_ids,
                           const std::vector<std::string>& class_ids,
                           const CoverageAccumulator& acc) {
  CoverageReport r;
  r.machine = machine;
  const auto hits = acc.transition_hits();
  for (const auto& id : transition_ids) {
    auto it = hits.find(id);
    const std::size_t n = it == hits.end() ? 0 : it->second;
    r.transition_hits[id] = n;
    (n > 0 ? r.covered : r.uncovered).insert(id);
  }
  const auto classes = acc.class_hits();
  for (const auto& id : class_ids) {
    auto it = classes.find(id);
    r.class_hits[id] = it == classes.end() ? 0 : it->second;
  }
  r.unclassified = acc.unclassified();
  r.passed = acc.passed();
  r.failed = acc.failed();
  return r;
}

namespace {

void extend(const std::vector<ClassEdge>& graph, const std::string& at, std::size_t limit,
            std::vector<std::size_t>& uses, TransitionPath& path,
            std::set<TransitionPath>& out) {
  for (std::size_t e = 0; e < graph.size(); ++e) {
    if (graph[e].from != at || uses[e] >= limit) continue;
    ++uses[e];
    path.push_back(graph[e].transition);
    out.insert(path);
    extend(graph, graph[e].to, limit, uses, path, out);
    path.pop_back();
    --uses[e];
  }
}

}  // namespace

std::set<TransitionPath> boundary_interior_paths(const std::vector<ClassEdge>& graph,
                                                 const std::string& start_class,
                                                 std::size_t max_loop_unroll) {
  std::set<TransitionPath> out;
  std::vector<std::size_t> uses(graph.size(), 0);
  TransitionPath path;
  extend(graph, start_class, max_loop_unroll, uses, path, out);
  if (out.empty()) out.insert(TransitionPath{});
  return out;
}

}  // namespace abpkit::testkit
