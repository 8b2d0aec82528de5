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

#include <gtest/gtest.h>

#include <random>

#include "abp_oracles.hpp"
#include "abpkit/abp/medium.hpp"
#include "abpkit/abp/oracle.hpp"
#include "abpkit/abp/receiver.hpp"
#include "abpkit/abp/sender.hpp"
#include "abpkit/abp/system.hpp"
#include "abpkit/errors.hpp"

namespace abpkit::abp {
namespace {

using P = Payload;
using In = SenderIn<P>;
using Out = SenderOut<P>;
using St = SenderState<P>;
using M = runtime::Merged<P, Bit>;
using SM = SignedMsg<P>;
using stream::inject_ticks;
using stream::msg;
using stream::take_slots;
using stream::tick;

In payload(P p) { return In::msg(M::from_a(p)); }
In ack(Bit b) { return In::msg(M::from_b(b)); }

runtime::Step<St, Out> step(St s, In in) { return sender_step<P>(s, in); }

TEST(Sender, AckOnEmptyBufferIsIgnored) {
  EXPECT_EQ(step({true, {}}, ack(true)), (runtime::Step<St, Out>{{true, {}}, {}}));
}

TEST(Sender, TimeoutResendsHead) {
  EXPECT_EQ(step({true, {3, 4}}, In::timeout()),
            (runtime::Step<St, Out>{{true, {3, 4}}, {Out::msg({true, 3}), Out::set_timer(3)}}));
}

TEST(Sender, MatchingAckOnLastItemDisablesTimer) {
  EXPECT_EQ(step({true, {4}}, ack(true)),
            (runtime::Step<St, Out>{{false, {}}, {Out::set_timer(runtime::kTimerDisabled)}}));
}

TEST(Sender, MatchingAckSendsNextWithFlippedBit) {
  EXPECT_EQ(step({true, {3, 4}}, ack(true)),
            (runtime::Step<St, Out>{{false, {4}}, {Out::msg({false, 4}), Out::set_timer(3)}}));
}

TEST(Sender, MismatchingAckIsIgnored) {
  EXPECT_EQ(step({true, {3, 4}}, ack(false)), (runtime::Step<St, Out>{{true, {3, 4}}, {}}));
}

TEST(Sender, PayloadIntoEmptyAndNonEmptyBuffer) {
  EXPECT_EQ(step({true, {}}, payload(3)),
            (runtime::Step<St, Out>{{true, {3}}, {Out::msg({true, 3}), Out::set_timer(3)}}));
  EXPECT_EQ(step({true, {1}}, payload(3)), (runtime::Step<St, Out>{{true, {1, 3}}, {}}));
  EXPECT_EQ(step({false, {}}, In::timeout()), (runtime::Step<St, Out>{{false, {}}, {}}));
}

TEST(Sender, TimeoutConstantIsAParameter) {
  EXPECT_EQ(sender_step<P>({true, {}}, payload(3), 5).outputs,
            (std::vector<Out>{Out::msg({true, 3}), Out::set_timer(5)}));
}

TEST(SenderComponent, ResendsEveryTimeoutWithoutAcks) {
  const auto ds = sender_component<P>(inject_ticks<P>({{3}, {}, {}, {}, {}, {}, {}, {}, {}}),
                                      stream::silent<Bit>());
  EXPECT_EQ(take_slots(ds, 9), (std::vector<std::vector<SM>>{
                                   {{true, 3}}, {}, {{true, 3}}, {}, {}, {{true, 3}}, {}, {},
                                   {{true, 3}}}));
}

TEST(SenderComponent, AllTicksInAllTicksOut) {
  const auto ds = sender_component<P>(stream::silent<P>(6), stream::silent<Bit>(6));
  EXPECT_EQ(take_slots(ds, 6), std::vector<std::vector<SM>>(6));
  EXPECT_EQ(ds.horizon(), std::optional<std::size_t>(6));
}

TEST(SenderComponent, AckStopsResends) {
  for (std::size_t ack_slot : {1u, 2u}) {
    std::vector<std::vector<Bit>> acks(8);
    acks[ack_slot] = {true};
    const auto ds = sender_component<P>(inject_ticks<P>({{3}, {}, {}, {}, {}, {}, {}, {}}),
                                        inject_ticks(acks));
    std::vector<std::vector<SM>> want(8);
    want[0] = {{true, 3}};
    EXPECT_EQ(take_slots(ds, 8), want) << "ack in slot " << ack_slot;
  }
}

TEST(SenderComponent, FalseInitialBit) {
  const auto ds = sender_component<P>(inject_ticks<P>({{8}}), stream::silent<Bit>(1),
                                      SenderConfig{3, false});
  EXPECT_EQ(take_slots(ds, 1), (std::vector<std::vector<SM>>{{{false, 8}}}));
}

// ---- oracles and medium -------------------------------------------------

TEST(Oracle, ExplicitExhaustion) {
  auto c = OracleStream::explicit_bits({true, false}).open();
  EXPECT_TRUE(c.next());
  EXPECT_FALSE(c.next());
  EXPECT_TRUE(c.exhausted());
  EXPECT_THROW(c.next(), OracleExhausted);
}

TEST(Oracle, CyclicNeedsAPass) {
  EXPECT_THROW(OracleStream::cyclic({false, false}), UsageError);
  EXPECT_THROW(OracleStream::cyclic({}), UsageError);
  auto c = OracleStream::cyclic({false, true}).open();
  std::vector<bool> got;
  for (int k = 0; k < 5; ++k) got.push_back(c.next());
  EXPECT_EQ(got, (std::vector<bool>{false, true, false, true, false}));
  EXPECT_FALSE(c.exhausted());
}

TEST(Oracle, BernoulliIsSeededAndBounded) {
  EXPECT_THROW(OracleStream::bernoulli(1.0, 1), UsageError);
  EXPECT_THROW(OracleStream::bernoulli(-0.1, 1), UsageError);
  auto a = OracleStream::bernoulli(0.4, 99).open();
  auto b = OracleStream::bernoulli(0.4, 99).open();
  int passes = 0;
  for (int k = 0; k < 2000; ++k) {
    const bool x = a.next();
    EXPECT_EQ(x, b.next());
    passes += x;
  }
  // 2000 draws at pass probability 0.6: mean 1200, sd about 22.
  EXPECT_GT(passes, 1100);
  EXPECT_LT(passes, 1300);
  auto never = OracleStream::bernoulli(0.0, 5).open();
  for (int k = 0; k < 100; ++k) EXPECT_TRUE(never.next());
}

TEST(Oracle, FairnessWarnings) {
  EXPECT_FALSE(OracleStream::cyclic({false, true}).fairness_warning(10));
  EXPECT_FALSE(OracleStream::bernoulli(0.5, 1).fairness_warning(10));
  EXPECT_FALSE(OracleStream::explicit_bits({false, true}).fairness_warning());
  EXPECT_TRUE(OracleStream::explicit_bits({true, false}).fairness_warning());
  EXPECT_TRUE(OracleStream::explicit_bits({}).fairness_warning());
  EXPECT_TRUE(OracleStream::explicit_bits({false, false, false}).fairness_warning(2));
  EXPECT_FALSE(OracleStream::explicit_bits({true, false}).fairness_warning(1));
}

TEST(Oracle, CursorEqualityComparesFuturePredictions) {
  auto a = OracleStream::cyclic({true, false}).open();
  const auto b = OracleStream::cyclic({false, true}).open();
  EXPECT_NE(a, b);
  a.next();
  EXPECT_EQ(a, b);
}

TEST(Medium, CaseAnalysis) {
  const auto pass = medium_step<P>(OracleStream::explicit_bits({true}).open(), 7);
  EXPECT_EQ(pass.outputs, std::vector<P>{7});
  EXPECT_TRUE(pass.state.exhausted());
  const auto drop = medium_step<P>(OracleStream::explicit_bits({false}).open(), 7);
  EXPECT_TRUE(drop.outputs.empty());
  EXPECT_TRUE(drop.state.exhausted());
}

TEST(Medium, Fold) {
  const auto r = runtime::run_machine(OracleStream::explicit_bits({true, false, true}).open(),
                                      medium_delta<P>(), {1, 2, 3});
  EXPECT_EQ(r.outputs, (std::vector<P>{1, 3}));
}

TEST(Medium, TicksDoNotConsumeOracleBits) {
  const auto out = medium_component<P>(OracleStream::explicit_bits({false, true}),
                                       inject_ticks<P>({{1}, {}, {}, {2}}));
  EXPECT_EQ(take_slots(out, 4), (std::vector<std::vector<P>>{{}, {}, {}, {2}}));
}

TEST(MediumComponent, PerMessageFold) {
  const auto out = medium_component<P>(OracleStream::explicit_bits({false, true}),
                                       inject_ticks<P>({{1}, {2}}));
  EXPECT_EQ(stream::take_items(out, 10),
            (std::vector<stream::Ticked<P>>{tick<P>(), msg<P>(2), tick<P>()}));
}

TEST(MediumComponent, SubsequenceOfInput) {
  std::mt19937 rng(61);
  for (int round = 0; round < 300; ++round) {
    std::vector<std::vector<P>> slots(1 + rng() % 10);
    std::vector<P> flat;
    for (auto& s : slots) {
      s.resize(rng() % 3);
      for (auto& x : s) flat.push_back(x = static_cast<P>(rng() % 5));
    }
    std::vector<bool> bits(flat.size());
    for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = rng() % 2;
    const auto out = stream::untime(
        medium_component<P>(OracleStream::explicit_bits(bits), inject_ticks(slots)),
        slots.size());
    EXPECT_EQ(out, test::medium_reference(bits, flat));
    EXPECT_TRUE(test::is_subsequence(out, flat));
  }
}

// ---- receiver -------------------------------------------------------------

TEST(Receiver, Examples) {
  EXPECT_EQ(receiver_step<P>({true}, {true, 7}), (ReceiverStep<P>{{false}, {true}, {7}}));
  EXPECT_EQ(receiver_step<P>({true}, {false, 7}), (ReceiverStep<P>{{true}, {false}, {}}));
  EXPECT_EQ(receiver_step<P>({false}, {false, 9}), (ReceiverStep<P>{{true}, {false}, {9}}));
}

TEST(Receiver, DeltaEmitsAckBeforeData) {
  using RO = ReceiverOut<P>;
  EXPECT_EQ(receiver_delta<P>()({true}, {true, 7}).outputs,
            (std::vector<RO>{RO::from_a(true), RO::from_b(7)}));
}

TEST(Receiver, LiftedTicksLeaveStateUnchanged) {
  const auto d = timed_receiver_delta<P>();
  for (std::size_t n : {0u, 1u, 5u}) {
    const auto r = runtime::run_machine(ReceiverState{false}, d,
                                        std::vector<stream::Ticked<SM>>(n, tick<SM>()));
    EXPECT_EQ(r.state, ReceiverState{false});
    EXPECT_EQ(stream::tick_count(r.outputs), n);
    EXPECT_EQ(r.outputs.size(), n);
  }
}

TEST(ReceiverComponent, Examples) {
  {
    const auto [acks, data] = receiver_component<P>(inject_ticks<SM>({{{true, 1}}}));
    EXPECT_EQ(take_slots(acks, 1), (std::vector<std::vector<Bit>>{{true}}));
    EXPECT_EQ(take_slots(data, 1), (std::vector<std::vector<P>>{{1}}));
  }
  {
    const auto [acks, data] = receiver_component<P>(stream::silent<SM>(3));
    EXPECT_EQ(take_slots(acks, 3), std::vector<std::vector<Bit>>(3));
    EXPECT_EQ(take_slots(data, 3), std::vector<std::vector<P>>(3));
  }
  {
    const auto [acks, data] = receiver_component<P>(inject_ticks<SM>({{{true, 1}}, {{true, 1}}}));
    EXPECT_EQ(take_slots(acks, 2), (std::vector<std::vector<Bit>>{{true}, {true}}));
    EXPECT_EQ(take_slots(data, 2), (std::vector<std::vector<P>>{{1}, {}}));
  }
}

// ---- composition ----------------------------------------------------------

const std::pair<OracleStream, OracleStream> kAllPass{OracleStream::all_pass(),
                                                     OracleStream::all_pass()};

TEST(AbpCompose, AllPassTwoPayloads) {
  std::vector<std::vector<P>> in(10);
  in[0] = {1};
  in[2] = {2};
  const auto out = abp_compose(kAllPass, inject_ticks(in), 10);
  EXPECT_EQ(stream::untime(out, 10), (std::vector<P>{1, 2}));
  // Delivery happens in the slot of the send; the ack reaches the sender one
  // slot later through the delayed ack wire.
  EXPECT_EQ(take_slots(out, 10), in);
  const auto run = run_abp(kAllPass, inject_ticks(in), 10);
  std::vector<std::vector<WireValue>> am(10);
  am[1] = {WireValue::of_bit(true)};
  am[3] = {WireValue::of_bit(false)};
  EXPECT_EQ(run.wire(wires::kAckMedium).slots, am);
}

TEST(AbpCompose, EmptyInput) {
  EXPECT_TRUE(stream::untime(abp_compose(kAllPass, stream::silent<P>(7), 7), 7).empty());
}

TEST(AbpCompose, SingleDropIsResentOnceAndDeliveredOnce) {
  const auto run = run_abp({OracleStream::explicit_bits({false, true, true, true}),
                            OracleStream::all_pass()},
                           inject_ticks<P>({{1}, {}, {}, {}, {}, {}, {}, {}}), 8);
  EXPECT_EQ(test::data_sent(run), (std::vector<SM>{{true, 1}, {true, 1}}));
  EXPECT_EQ(run.wire(wires::kDataSent).slots[2].size(), 1u);
  EXPECT_EQ(test::payloads_on(run, wires::kOutput), std::vector<P>{1});
}

TEST(AbpCompose, ExhaustedOracleIsAModelFailure) {
  EXPECT_THROW(run_abp({OracleStream::explicit_bits({false}), OracleStream::all_pass()},
                       inject_ticks<P>({{1}, {}, {}, {}}), 4),
               OracleExhausted);
}

TEST(AbpCompose, NetworkWiresInOrder) {
  const auto run = run_abp(kAllPass, stream::silent<P>(2), 2);
  std::vector<std::string> names;
  for (const auto& w : run.wires()) names.push_back(w.name);
  EXPECT_EQ(names, (std::vector<std::string>{"input", "ds", "dm", "as", "am", "out"}));
}

// ---- system properties over random lossy runs ----------------------------

struct RandomRun {
  std::vector<P> payloads;
  AbpRun run;
};

RandomRun random_run(std::mt19937& rng) {
  std::vector<std::vector<P>> slots;
  std::vector<P> payloads;
  const std::size_t n = 1 + rng() % 6;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t gap = rng() % 3; gap > 0; --gap) slots.emplace_back();
    const P p = static_cast<P>(rng() % 4);  // small range forces repeated values
    slots.push_back({p});
    payloads.push_back(p);
  }
  slots.resize(slots.size() + 150);
  const double drop = 0.1 * static_cast<double>(rng() % 5);
  auto run = run_abp({OracleStream::bernoulli(drop, rng()), OracleStream::bernoulli(drop, rng())},
                     inject_ticks(slots), slots.size());
  return {payloads, std::move(run)};
}

TEST(AbpProperties, SenderBufferIsFifo) {
  std::mt19937 rng(71);
  for (int round = 0; round < 100; ++round) {
    const auto r = random_run(rng);
    std::vector<P> firsts;
    for (const auto& m : test::first_transmissions(r.run)) firsts.push_back(m.payload);
    EXPECT_TRUE(test::is_subsequence(firsts, r.payloads));
    EXPECT_EQ(std::vector<P>(r.payloads.begin(),
                             r.payloads.begin() + static_cast<std::ptrdiff_t>(firsts.size())),
              firsts);
  }
}

TEST(AbpProperties, FirstTransmissionsAlternate) {
  std::mt19937 rng(73);
  for (int round = 0; round < 100; ++round) {
    const auto r = random_run(rng);
    const auto firsts = test::first_transmissions(r.run);
    for (std::size_t k = 0; k < firsts.size(); ++k) {
      EXPECT_EQ(firsts[k].bit, k % 2 == 0);
    }
  }
}

TEST(AbpProperties, NoDuplicateDelivery) {
  std::mt19937 rng(79);
  for (int round = 0; round < 100; ++round) {
    const auto r = random_run(rng);
    const auto out = test::payloads_on(r.run, wires::kOutput);
    ASSERT_LE(out.size(), r.payloads.size());
    EXPECT_EQ(std::vector<P>(r.payloads.begin(),
                             r.payloads.begin() + static_cast<std::ptrdiff_t>(out.size())),
              out);
  }
}

TEST(AbpProperties, IdentityAtGenerousHorizon) {
  std::mt19937 rng(83);
  for (int round = 0; round < 100; ++round) {
    const auto r = random_run(rng);
    EXPECT_EQ(test::payloads_on(r.run, wires::kOutput), r.payloads);
  }
}

}  // namespace
}  // namespace abpkit::abp
