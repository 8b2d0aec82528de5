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

// Networks of slot-synchronous components connected by wires.
//
// A component consumes one complete time slot on every input port and
// produces one complete slot on every output port. Wires may carry an
// initializer that is prepended to the producer's output; an initializer
// containing a tick delays the wire by one slot and is what lets a cyclic
// wiring make progress.
//
// run_network computes the wire contents slot by slot. Within a slot,
// components are visited in topological order of the condensation of the
// wiring graph (declaration order inside a strongly connected component and
// between independent ones); a component fires once every input wire holds
// the current slot. Rounds repeat until all components fired. A round in
// which nothing fires raises DeadlockDetected.

#ifndef ABPKIT_RUNTIME_NETWORK_HPP_
#define ABPKIT_RUNTIME_NETWORK_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abpkit/errors.hpp"
#include "abpkit/runtime/delta.hpp"
#include "abpkit/runtime/merge.hpp"
#include "abpkit/stream/timed_stream.hpp"

namespace abpkit::runtime {

template <class V>
class Process {
 public:
  virtual ~Process() = default;

  // `inputs[p]` holds the messages of the current slot on input port p. The
  // result holds one slot per output port.
  virtual std::vector<std::vector<V>> step_slot(
      const std::vector<std::vector<V>>& inputs) = 0;
};

// Creates a process in its initial state. Each run gets fresh processes.
template <class V>
using ProcessFactory = std::function<std::unique_ptr<Process<V>>()>;

struct PortRef {
  std::string component;
  std::size_t port = 0;
};

template <class V>
struct ComponentSpec {
  std::string name;
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  ProcessFactory<V> make;
};

template <class V>
struct WireSpec {
  std::string name;
  std::optional<PortRef> from;  // nullopt: fed from an external input
  std::optional<PortRef> to;    // nullopt: a network output
  std::vector<Ticked<V>> initializer;
};

template <class V>
class NetworkSpec {
 public:
  NetworkSpec& component(std::string name, std::size_t inputs, std::size_t outputs,
                         ProcessFactory<V> make) {
    components_.push_back({std::move(name), inputs, outputs, std::move(make)});
    return *this;
  }

  NetworkSpec& wire(std::string name, std::optional<PortRef> from,
                    std::optional<PortRef> to,
                    std::vector<Ticked<V>> initializer = {}) {
    wires_.push_back({std::move(name), std::move(from), std::move(to),
                      std::move(initializer)});
    return *this;
  }

  const std::vector<ComponentSpec<V>>& components() const noexcept { return components_; }
  const std::vector<WireSpec<V>>& wires() const noexcept { return wires_; }

  std::optional<std::size_t> component_index(std::string_view name) const {
    for (std::size_t i = 0; i < components_.size(); ++i) {
      if (components_[i].name == name) return i;
    }
    return std::nullopt;
  }

  // Names are unique and every port is connected to exactly one wire.
  void validate() const {
    std::set<std::string> names;
    for (const auto& c : components_) {
      if (!names.insert(c.name).second) {
        throw UsageError("network: duplicate component '" + c.name + "'");
      }
      if (!c.make) throw UsageError("network: component '" + c.name + "' has no factory");
    }
    names.clear();
    std::set<std::pair<std::string, std::size_t>> sources, sinks;
    auto check_port = [&](const WireSpec<V>& w, const PortRef& p, bool is_input) {
      auto idx = component_index(p.component);
      if (!idx) {
        throw UsageError("network: wire '" + w.name + "' names unknown component '" +
                         p.component + "'");
      }
      const auto& c = components_[*idx];
      const std::size_t limit = is_input ? c.inputs : c.outputs;
      if (p.port >= limit) {
        throw UsageError("network: wire '" + w.name + "' uses port " +
                         std::to_string(p.port) + " of '" + c.name + "'");
      }
      auto& used = is_input ? sinks : sources;
      if (!used.insert({p.component, p.port}).second) {
        throw UsageError("network: port " + std::to_string(p.port) + " of '" + c.name +
                         "' is connected twice");
      }
    };
    for (const auto& w : wires_) {
      if (!names.insert(w.name).second) {
        throw UsageError("network: duplicate wire '" + w.name + "'");
      }
      if (w.from) check_port(w, *w.from, false);
      if (w.to) check_port(w, *w.to, true);
    }
    for (const auto& c : components_) {
      for (std::size_t p = 0; p < c.inputs; ++p) {
        if (!sinks.contains({c.name, p})) {
          throw UsageError("network: input port " + std::to_string(p) + " of '" + c.name +
                           "' is not connected");
        }
      }
      for (std::size_t p = 0; p < c.outputs; ++p) {
        if (!sources.contains({c.name, p})) {
          throw UsageError("network: output port " + std::to_string(p) + " of '" +
                           c.name + "' is not connected");
        }
      }
    }
  }

 private:
  std::vector<ComponentSpec<V>> components_;
  std::vector<WireSpec<V>> wires_;
};

// Per-slot message history of one wire, as seen by its consumer.
template <class V>
struct WireTrace {
  std::string name;
  std::vector<std::vector<V>> slots;

  friend bool operator==(const WireTrace&, const WireTrace&) = default;
};

template <class V>
class NetworkRun {
 public:
  NetworkRun(std::vector<WireTrace<V>> wires, std::size_t slots)
      : wires_(std::move(wires)), slots_(slots) {}

  // In wire declaration order.
  const std::vector<WireTrace<V>>& wires() const noexcept { return wires_; }
  std::size_t slots() const noexcept { return slots_; }

  const WireTrace<V>& wire(std::string_view name) const {
    for (const auto& w : wires_) {
      if (w.name == name) return w;
    }
    throw UsageError("network run: no wire '" + std::string(name) + "'");
  }

  TimedStream<V> stream(std::string_view name) const {
    return stream::inject_ticks(wire(name).slots);
  }

  friend bool operator==(const NetworkRun&, const NetworkRun&) = default;

 private:
  std::vector<WireTrace<V>> wires_;
  std::size_t slots_;
};

namespace detail {

// Visiting order: topological order of the strongly connected components,
// ties and members ordered by declaration index.
template <class V>
std::vector<std::size_t> schedule_order(const NetworkSpec<V>& net) {
  const auto& comps = net.components();
  const std::size_t n = comps.size();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& w : net.wires()) {
    if (w.from && w.to) {
      succ[*net.component_index(w.from->component)].push_back(
          *net.component_index(w.to->component));
    }
  }

  // Tarjan's algorithm.
  std::vector<int> index(n, -1), low(n, 0), scc(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0, scc_count = 0;
  std::function<void(std::size_t)> connect = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : succ[v]) {
      if (index[w] < 0) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        scc[w] = scc_count;
      } while (w != v);
      ++scc_count;
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) connect(v);
  }

  const auto k = static_cast<std::size_t>(scc_count);
  std::vector<std::size_t> first_member(k, n);
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t v = 0; v < n; ++v) {
    const auto c = static_cast<std::size_t>(scc[v]);
    members[c].push_back(v);
    first_member[c] = std::min(first_member[c], v);
  }
  std::vector<std::set<std::size_t>> csucc(k);
  std::vector<std::size_t> indeg(k, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (auto w : succ[v]) {
      const auto a = static_cast<std::size_t>(scc[v]);
      const auto b = static_cast<std::size_t>(scc[w]);
      if (a != b && csucc[a].insert(b).second) ++indeg[b];
    }
  }
  using Entry = std::pair<std::size_t, std::size_t>;  // (first member, scc)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (std::size_t c = 0; c < k; ++c) {
    if (indeg[c] == 0) ready.push({first_member[c], c});
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const auto c = ready.top().second;
    ready.pop();
    order.insert(order.end(), members[c].begin(), members[c].end());
    for (auto d : csucc[c]) {
      if (--indeg[d] == 0) ready.push({first_member[d], d});
    }
  }
  return order;
}

}  // namespace detail

// Runs `net` for `slots` time slots. `external` maps each externally fed
// wire to its stream; each must provide at least `slots` slots.
template <class V>
NetworkRun<V> run_network(const NetworkSpec<V>& net,
                          const std::map<std::string, TimedStream<V>>& external,
                          std::size_t slots) {
  net.validate();
  const auto& comps = net.components();
  const auto& wires = net.wires();

  struct WireState {
    std::vector<std::vector<V>> content;  // complete slots visible to the consumer
    std::vector<V> carry;                 // initializer messages after its last tick
    bool produced_any = false;
  };
  std::vector<WireState> state(wires.size());
  for (std::size_t w = 0; w < wires.size(); ++w) {
    std::vector<V> current;
    for (const auto& item : wires[w].initializer) {
      if (item.is_tick()) {
        state[w].content.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(item.payload());
      }
    }
    state[w].carry = std::move(current);
  }
  auto deliver = [&](std::size_t w, std::vector<V> slot) {
    auto& ws = state[w];
    if (!ws.produced_any && !ws.carry.empty()) {
      slot.insert(slot.begin(), ws.carry.begin(), ws.carry.end());
      ws.carry.clear();
    }
    ws.produced_any = true;
    ws.content.push_back(std::move(slot));
  };

  // External feeds.
  std::vector<std::pair<std::size_t, typename TimedStream<V>::Cursor>> feeds;
  for (std::size_t w = 0; w < wires.size(); ++w) {
    if (wires[w].from) continue;
    auto it = external.find(wires[w].name);
    if (it == external.end()) {
      throw UsageError("network: no external input for wire '" + wires[w].name + "'");
    }
    if (it->second.horizon() && *it->second.horizon() < slots) {
      throw UsageError("network: external input '" + wires[w].name + "' has " +
                       std::to_string(*it->second.horizon()) + " slots, " +
                       std::to_string(slots) + " requested");
    }
    feeds.emplace_back(w, it->second.open());
  }

  // Port -> wire lookup.
  std::vector<std::vector<std::size_t>> in_wire(comps.size()), out_wire(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    in_wire[c].assign(comps[c].inputs, 0);
    out_wire[c].assign(comps[c].outputs, 0);
  }
  for (std::size_t w = 0; w < wires.size(); ++w) {
    if (wires[w].to) in_wire[*net.component_index(wires[w].to->component)][wires[w].to->port] = w;
    if (wires[w].from) {
      out_wire[*net.component_index(wires[w].from->component)][wires[w].from->port] = w;
    }
  }

  std::vector<std::unique_ptr<Process<V>>> procs;
  procs.reserve(comps.size());
  for (const auto& c : comps) procs.push_back(c.make());
  const auto order = detail::schedule_order(net);

  for (std::size_t k = 0; k < slots; ++k) {
    for (auto& [w, next] : feeds) {
      auto slot = detail::read_slot<V>(next);
      if (!slot) {
        throw UsageError("network: external input '" + wires[w].name + "' ended at slot " +
                         std::to_string(k));
      }
      deliver(w, std::move(*slot));
    }

    std::vector<bool> fired(comps.size(), false);
    std::size_t remaining = comps.size();
    while (remaining > 0) {
      bool progress = false;
      for (auto c : order) {
        if (fired[c]) continue;
        const bool ready = std::all_of(in_wire[c].begin(), in_wire[c].end(),
                                       [&](std::size_t w) { return state[w].content.size() > k; });
        if (!ready) continue;
        std::vector<std::vector<V>> ins;
        ins.reserve(in_wire[c].size());
        for (auto w : in_wire[c]) ins.push_back(state[w].content[k]);
        auto outs = procs[c]->step_slot(ins);
        if (outs.size() != out_wire[c].size()) {
          throw ModelError("network: component '" + comps[c].name + "' produced " +
                           std::to_string(outs.size()) + " output slots, expected " +
                           std::to_string(out_wire[c].size()));
        }
        for (std::size_t p = 0; p < outs.size(); ++p) deliver(out_wire[c][p], std::move(outs[p]));
        fired[c] = true;
        --remaining;
        progress = true;
      }
      if (!progress) {
        std::string pending;
        for (std::size_t c = 0; c < comps.size(); ++c) {
          if (!fired[c]) pending += (pending.empty() ? "" : ", ") + comps[c].name;
        }
        throw DeadlockDetected("DeadlockDetected: no progress in slot " + std::to_string(k) +
                               "; waiting components: " + pending);
      }
    }
  }

  std::vector<WireTrace<V>> traces;
  traces.reserve(wires.size());
  for (std::size_t w = 0; w < wires.size(); ++w) {
    auto& content = state[w].content;
    if (content.size() > slots) content.resize(slots);
    traces.push_back({wires[w].name, std::move(content)});
  }
  return NetworkRun<V>(std::move(traces), slots);
}

// A process driven by a timed delta. `gather` turns the input slots into the
// ordered message items fed to the delta before the closing tick; `scatter`
// routes each output message to an output port. The delta must emit exactly
// one tick per slot, after all of that slot's messages.
template <class V, class S, class In, class Out>
class MachineProcess final : public Process<V> {
 public:
  using Gather = std::function<std::vector<In>(const std::vector<std::vector<V>>&)>;
  using Scatter = std::function<void(const Out&, std::vector<std::vector<V>>&)>;

  MachineProcess(std::string name, S start, Delta<S, Ticked<In>, Ticked<Out>> delta,
                 std::size_t outputs, Gather gather, Scatter scatter)
      : name_(std::move(name)),
        state_(std::move(start)),
        delta_(std::move(delta)),
        outputs_(outputs),
        gather_(std::move(gather)),
        scatter_(std::move(scatter)) {}

  std::vector<std::vector<V>> step_slot(const std::vector<std::vector<V>>& inputs) override {
    std::vector<std::vector<V>> outs(outputs_);
    std::size_t ticks = 0;
    auto feed = [&](const Ticked<In>& item) {
      auto step = delta_(state_, item);
      state_ = std::move(step.state);
      for (const auto& o : step.outputs) {
        if (o.is_tick()) {
          ++ticks;
        } else if (ticks > 0) {
          throw ModelError("component '" + name_ + "' emitted a message after its slot tick");
        } else {
          scatter_(o.payload(), outs);
        }
      }
    };
    for (const auto& m : gather_(inputs)) feed(stream::msg(m));
    feed(stream::tick<In>());
    if (ticks != 1) {
      throw ModelError("component '" + name_ + "' emitted " + std::to_string(ticks) +
                       " ticks in one slot");
    }
    return outs;
  }

  const S& state() const noexcept { return state_; }

 private:
  std::string name_;
  S state_;
  Delta<S, Ticked<In>, Ticked<Out>> delta_;
  std::size_t outputs_;
  Gather gather_;
  Scatter scatter_;
};

template <class V, class S, class In, class Out>
ProcessFactory<V> machine_process(
    std::string name, S start, Delta<S, Ticked<In>, Ticked<Out>> delta, std::size_t outputs,
    typename MachineProcess<V, S, In, Out>::Gather gather,
    typename MachineProcess<V, S, In, Out>::Scatter scatter) {
  return [=]() -> std::unique_ptr<Process<V>> {
    return std::make_unique<MachineProcess<V, S, In, Out>>(name, start, delta, outputs, gather,
                                                           scatter);
  };
}

}  // namespace abpkit::runtime

#endif  // ABPKIT_RUNTIME_NETWORK_HPP_
