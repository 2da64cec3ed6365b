#include <gtest/gtest.h>

#include "freshcov/ec_queue.hpp"
#include "freshcov/errors.hpp"

using namespace freshcov;

TEST(EcQueue, EmptyWaitIsZero) {
  EcServerQueue q(3, 1);
  EXPECT_EQ(q.waiting_time(0), 0);
  EXPECT_FALSE(q.serve(0).has_value());
}

TEST(EcQueue, OwnJobAtHead) {
  EcServerQueue q(3, 1);
  q.push(0, 5, 6);
  EXPECT_EQ(q.waiting_time(0), 1);
}

TEST(EcQueue, WaitIncludesJobsAhead) {
  EcServerQueue q(3, 1);
  q.push(0, 1, 2);
  q.push(1, 1, 2);
  q.push(2, 1, 2);
  EXPECT_EQ(q.waiting_time(2), 3);
  EXPECT_EQ(q.waiting_time(1), 2);
}

TEST(EcQueue, JobArrivingThisSlotWaits) {
  EcServerQueue q(1, 1);
  q.push(0, 3, 4);
  EXPECT_FALSE(q.serve(4).has_value());
  const auto done = q.serve(5);
  ASSERT_TRUE(done.has_value());
  EXPECT_EQ(done->gen_slot, 3);
  EXPECT_TRUE(q.empty());
}

TEST(EcQueue, ServiceTakesTauSlotsInFifoOrder) {
  EcServerQueue q(2, 2);
  q.push(1, 0, 1);
  q.push(0, 0, 1);
  EXPECT_FALSE(q.serve(2).has_value());
  auto a = q.serve(3);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->sensor, 1u);
  EXPECT_FALSE(q.serve(4).has_value());
  auto b = q.serve(5);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->sensor, 0u);
}

TEST(EcQueue, FresherDataReplacesInPlace) {
  EcServerQueue q(3, 2);
  q.push(0, 1, 2);
  q.push(1, 1, 2);
  q.serve(3);  // head sensor 0 has one slot left
  q.push(0, 9, 10);
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(q.jobs().front().sensor, 0u);
  EXPECT_EQ(q.jobs().front().gen_slot, 9);
  EXPECT_EQ(q.jobs().front().remaining, 2);
  EXPECT_EQ(q.replacements(), 1u);
  EXPECT_THROW(q.push(0, 9, 11), ContractViolation);
  EXPECT_THROW(q.push(0, 3, 11), ContractViolation);
}

TEST(EcQueue, AtMostOneJobPerSensor) {
  EcServerQueue q(2, 1);
  for (int g = 0; g < 10; ++g) {
    q.push(0, g, g + 1);
    q.push(1, g, g + 1);
    EXPECT_LE(q.size(), 2u);
  }
  EXPECT_TRUE(q.contains(0));
  EXPECT_TRUE(q.contains(1));
  EXPECT_THROW(q.push(5, 0, 0), ContractViolation);
}
