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

#include <memory>
#include <random>
#include <set>

#include "abpkit/errors.hpp"
#include "abpkit/stream/timed_stream.hpp"

namespace abpkit::stream {
namespace {

using T = Ticked<int>;
using Items = std::vector<T>;

T m(int x) { return msg(x); }
T tk() { return tick<int>(); }

TEST(TickedItem, StructuralEquality) {
  EXPECT_EQ(m(1), m(1));
  EXPECT_NE(m(1), m(2));
  EXPECT_NE(m(1), tk());
  EXPECT_EQ(tk(), tk());
  EXPECT_TRUE(tk().is_tick());
  EXPECT_TRUE(m(3).is_msg());
  EXPECT_EQ(m(3).payload(), 3);
  EXPECT_THROW(tk().payload(), UsageError);
}

TEST(Untimed, EmptyHasLengthZero) {
  EXPECT_EQ(length_of(empty<int>()), 0u);
  EXPECT_EQ(concat(empty<int>(), UntimedSeq<int>{4, 5}), (UntimedSeq<int>{4, 5}));
  EXPECT_TRUE(filter_set<int>({1}, empty<int>()).empty());
}

TEST(Untimed, HeadOf) {
  EXPECT_EQ(head_of(UntimedSeq<int>{3, 4}), 3);
  EXPECT_EQ(head_of(UntimedSeq<int>{7}), 7);
  EXPECT_THROW(head_of(empty<int>()), EmptyStream);
}

TEST(Untimed, TailOf) {
  EXPECT_EQ(tail_of(UntimedSeq<int>{3, 4}), (UntimedSeq<int>{4}));
  EXPECT_EQ(tail_of(UntimedSeq<int>{7}), empty<int>());
  EXPECT_EQ(head_of(tail_of(UntimedSeq<int>{3, 4})), 4);
  EXPECT_THROW(tail_of(empty<int>()), EmptyStream);
}

TEST(Untimed, LengthAndConcat) {
  EXPECT_EQ(length_of(UntimedSeq<int>{3, 4}), 2u);
  EXPECT_EQ(concat(UntimedSeq<int>{1}, UntimedSeq<int>{2, 3}), (UntimedSeq<int>{1, 2, 3}));
  EXPECT_EQ(concat(empty<int>(), UntimedSeq<int>{2}), (UntimedSeq<int>{2}));
  // Buffer append as in the sender: xs ++ [i].
  EXPECT_EQ(concat(UntimedSeq<int>{3}, UntimedSeq<int>{4}), (UntimedSeq<int>{3, 4}));
}

TEST(Untimed, FilterSet) {
  const Items s{m(1), tk(), m(2), tk()};
  EXPECT_EQ(filter_set<T>({tk()}, s), (Items{tk(), tk()}));
  EXPECT_EQ(messages_of(Items{m(1), tk(), m(2)}), (UntimedSeq<int>{1, 2}));
  EXPECT_TRUE(filter_set<T>({}, s).empty());
}

TEST(Untimed, FilterSetComposesAsIntersection) {
  std::mt19937 rng(11);
  for (int round = 0; round < 200; ++round) {
    std::vector<int> s(rng() % 12);
    for (auto& x : s) x = static_cast<int>(rng() % 6);
    std::set<int> a, b, ab;
    for (int x = 0; x < 6; ++x) {
      if (rng() % 2) a.insert(x);
      if (rng() % 2) b.insert(x);
      if (a.count(x) && b.count(x)) ab.insert(x);
    }
    EXPECT_EQ(filter_set(a, filter_set(b, s)), filter_set(ab, s));
  }
}

TEST(Untimed, ConcatLaws) {
  std::mt19937 rng(5);
  for (int round = 0; round < 100; ++round) {
    UntimedSeq<int> a(rng() % 6), b(rng() % 6);
    for (auto& x : a) x = static_cast<int>(rng() % 100);
    for (auto& x : b) x = static_cast<int>(rng() % 100);
    EXPECT_EQ(concat(empty<int>(), a), a);
    EXPECT_EQ(concat(a, empty<int>()), a);
    EXPECT_EQ(length_of(concat(a, b)), length_of(a) + length_of(b));
  }
}

TEST(Timed, InjectTicks) {
  EXPECT_EQ(take_items(inject_ticks<int>({{1}, {}}), 10), (Items{m(1), tk(), tk()}));
  const auto none = inject_ticks<int>({});
  EXPECT_EQ(none.horizon(), std::optional<std::size_t>(0));
  EXPECT_TRUE(take_items(none, 5).empty());
  EXPECT_EQ(take_items(inject_ticks<int>({{1, 2}}), 10), (Items{m(1), m(2), tk()}));
}

TEST(Timed, HorizonCountsTicks) {
  const auto s = inject_ticks<int>({{1}, {}, {2, 3}, {}});
  ASSERT_TRUE(s.horizon());
  EXPECT_EQ(tick_count(take_items(s, 100)), *s.horizon());
  EXPECT_EQ(from_items<int>({m(1), tk(), tk()}).horizon(), std::optional<std::size_t>(2));
  EXPECT_EQ(length_of(s), 7u);
  EXPECT_THROW(length_of(silent<int>()), UsageError);
}

TEST(Timed, TakeItems) {
  EXPECT_EQ(take_items(inject_ticks<int>({{1}}), 2), (Items{m(1), tk()}));
  EXPECT_TRUE(take_items(inject_ticks<int>({{1}}), 0).empty());
  EXPECT_EQ(take_items(silent<int>(), 3), (Items{tk(), tk(), tk()}));
}

TEST(Timed, BoundedObservationIsRepeatable) {
  const auto s = inject_ticks<int>({{1}, {2}, {}, {3}});
  EXPECT_EQ(take_items(s, 5), take_items(s, 5));
  EXPECT_EQ(take_slots(s, 3), take_slots(s, 3));
}

TEST(Timed, Untime) {
  EXPECT_EQ(untime(from_items<int>({m(1), tk(), tk(), m(2), tk()}), 3), (UntimedSeq<int>{1, 2}));
  EXPECT_TRUE(untime(silent<int>(), 5).empty());
  EXPECT_EQ(untime(inject_ticks<int>({{1}, {}, {2}}), 3), (UntimedSeq<int>{1, 2}));
  EXPECT_THROW(untime(inject_ticks<int>({{1}}), 2), UsageError);
  // A slot is closed by its tick: only 1 lies within the first slot.
  EXPECT_EQ(untime(from_items<int>({m(1), tk(), m(2), tk()}), 1), (UntimedSeq<int>{1}));
}

TEST(Timed, UntimeRoundTrip) {
  std::mt19937 rng(3);
  for (int round = 0; round < 100; ++round) {
    std::vector<UntimedSeq<int>> slots(rng() % 8);
    UntimedSeq<int> flat;
    for (auto& slot : slots) {
      slot.resize(rng() % 3);
      for (auto& x : slot) {
        x = static_cast<int>(rng() % 50);
        flat.push_back(x);
      }
    }
    const auto s = inject_ticks(slots);
    EXPECT_EQ(untime(s, slots.size()), flat);
    EXPECT_EQ(take_slots(s, slots.size()), slots);
  }
}

TEST(Timed, ConcatDoesNotOpenSecondEarly) {
  auto opened = std::make_shared<int>(0);
  Seq<T> tracked([opened] {
    ++*opened;
    return Seq<T>::from({m(9), tk()}).open();
  });
  const TimedStream<int> b(tracked, 1);
  const auto s = concat(inject_ticks<int>({{1}, {2}}), b);
  EXPECT_EQ(s.horizon(), std::optional<std::size_t>(3));
  EXPECT_EQ(take_items(s, 4), (Items{m(1), tk(), m(2), tk()}));
  EXPECT_EQ(*opened, 0);
  EXPECT_EQ(take_items(s, 6), (Items{m(1), tk(), m(2), tk(), m(9), tk()}));
  EXPECT_EQ(*opened, 1);
}

TEST(Timed, ConcatWithUnboundedFirstNeverReachesSecond) {
  auto opened = std::make_shared<int>(0);
  Seq<T> tracked([opened] {
    ++*opened;
    return Seq<T>::from({m(9)}).open();
  });
  const auto s = concat(silent<int>(), TimedStream<int>(tracked, 0));
  EXPECT_EQ(take_items(s, 50).size(), 50u);
  EXPECT_EQ(*opened, 0);
  EXPECT_FALSE(s.horizon());
}

TEST(Timed, Prepend) {
  const auto s = prepend<int>({tk()}, inject_ticks<int>({{5}}));
  EXPECT_EQ(take_items(s, 10), (Items{tk(), m(5), tk()}));
  EXPECT_EQ(s.horizon(), std::optional<std::size_t>(2));
}

TEST(Timed, RenderTrace) {
  EXPECT_EQ(render_trace(Items{m(1), tk(), tk(), m(2), tk()}), "1 ~ ~ 2 ~");
  EXPECT_EQ(render_trace(Items{}), "");
}

}  // namespace
}  // namespace abpkit::stream
