#include "hedge/parallel.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>

TEST(Parallel, EffectiveWorkers) {
    EXPECT_EQ(hedge::effective_workers(3), 3u);
    EXPECT_GE(hedge::effective_workers(0), 1u);
}

TEST(Parallel, MapPreservesIndexOrder) {
    for (std::size_t workers : {1u, 2u, 7u}) {
        const auto out = hedge::parallel_map(1000, workers, [](std::size_t i) { return i * i; });
        ASSERT_EQ(out.size(), 1000u);
        for (std::size_t i = 0; i < out.size(); ++i) ASSERT_EQ(out[i], i * i);
    }
}

TEST(Parallel, EveryIndexVisitedOnce) {
    std::vector<std::atomic<int>> hits(5000);
    hedge::parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) ASSERT_EQ(h.load(), 1);
}

TEST(Parallel, ZeroItems) {
    hedge::parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

TEST(Parallel, ExceptionPropagates) {
    EXPECT_THROW(hedge::parallel_for(100, 4,
                                     [](std::size_t i) {
                                         if (i == 37) throw std::runtime_error("boom");
                                     }),
                 std::runtime_error);
    EXPECT_THROW(hedge::parallel_for(10, 1,
                                     [](std::size_t i) {
                                         if (i == 3) throw std::logic_error("serial");
                                     }),
                 std::logic_error);
}
