#include "hedge/randtests.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using hedge::ByteStream;

namespace {

ByteStream stream(std::vector<std::uint8_t> v) { return ByteStream::from_bytes(std::move(v)); }
ByteStream repeated(std::uint8_t b, std::size_t n) { return stream(std::vector<std::uint8_t>(n, b)); }

std::vector<std::uint8_t> each_value_once() {
    std::vector<std::uint8_t> v(256);
    for (int i = 0; i < 256; ++i) v[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    return v;
}

// p-values formed as 1 - sum + sum carry ~1e-16 absolute rounding noise.
void expect_p_close(double got, double want) { EXPECT_LE(std::fabs(got - want), 1e-9 * std::fabs(want) + 1e-14); }

} // namespace

// ---------------------------------------------------------------------------

TEST(Entropy, ConstantUniformAndTwoSymbols) {
    EXPECT_DOUBLE_EQ(hedge::shannon_entropy(repeated(0x41, 1000)), 0.0);
    EXPECT_NEAR(hedge::shannon_entropy(stream(each_value_once())), 8.0, 1e-12);
    std::vector<std::uint8_t> pairs;
    for (int i = 0; i < 512; ++i) pairs.insert(pairs.end(), {0x00, 0x01});
    EXPECT_NEAR(hedge::shannon_entropy(stream(pairs)), 1.0, 1e-12);
}

TEST(ChiSquare, PerfectFitAndMaximalDeviation) {
    const auto fit = hedge::chi_square(stream(each_value_once()));
    EXPECT_DOUBLE_EQ(fit.statistic, 0.0);
    EXPECT_DOUBLE_EQ(fit.confidence_pct, 100.0);
    const auto zeros = hedge::chi_square(repeated(0, 65536));
    EXPECT_DOUBLE_EQ(zeros.statistic, 16'711'680.0);
    EXPECT_LT(zeros.confidence_pct, 1e-6);
}

TEST(ChiSquare, MatchesHistogramOracle) {
    const auto data = fixture::random_bytes(8192, 8192);
    const auto got = hedge::chi_square(stream(data));
    const auto want = oracle::chi_square(data);
    EXPECT_LE(std::fabs(got.statistic - want.statistic), 1e-9 * want.statistic);
    EXPECT_LE(std::fabs(got.confidence_pct - want.confidence_pct), 1e-9 * std::max(1.0, want.confidence_pct));
}

TEST(ChiSquare, ShortStreamRejected) {
    EXPECT_THROW((void)hedge::chi_square(repeated(1, 255)), std::invalid_argument);
}

TEST(Autocorrelation, DegenerateAndPeriodic) {
    EXPECT_EQ(hedge::autocorrelation(repeated(7, 100), 1), 0.0);
    std::vector<std::uint8_t> period;
    for (int i = 0; i < 512; ++i) period.insert(period.end(), {0, 255});
    EXPECT_NEAR(hedge::autocorrelation(stream(period), 2), 1.0, 1e-12);
    EXPECT_NEAR(hedge::autocorrelation(stream(period), 1), -1.0, 1e-12);
}

TEST(Autocorrelation, MatchesPearsonOracle) {
    const auto data = fixture::random_bytes(4096, 4096);
    EXPECT_NEAR(hedge::autocorrelation(stream(data), 1), oracle::autocorrelation(data, 1), 1e-9);
    EXPECT_THROW((void)hedge::autocorrelation(stream(data), 0), std::invalid_argument);
}

TEST(MeanByte, SimpleCases) {
    EXPECT_DOUBLE_EQ(hedge::mean_byte(repeated(0, 10)), 0.0);
    EXPECT_DOUBLE_EQ(hedge::mean_byte(stream({0x00, 0xFF})), 127.5);
    EXPECT_DOUBLE_EQ(hedge::mean_byte(stream(each_value_once())), 127.5);
}

TEST(MonteCarloPi, CornerPoints) {
    EXPECT_DOUBLE_EQ(hedge::monte_carlo_pi(repeated(0x00, 12)).estimate, 4.0);
    EXPECT_DOUBLE_EQ(hedge::monte_carlo_pi(repeated(0xFF, 12)).estimate, 0.0);
}

TEST(MonteCarloPi, MatchesPointOracle) {
    const auto data = fixture::random_bytes(65536, 65536);
    const auto got = hedge::monte_carlo_pi(stream(data));
    EXPECT_EQ(got.estimate, oracle::monte_carlo_pi(data));
    EXPECT_NEAR(got.estimate, std::numbers::pi, 0.15);
}

TEST(Monobit, BalancedAndAllOnes) {
    const auto balanced = hedge::monobit(repeated(0xAA, 128));
    EXPECT_DOUBLE_EQ(balanced.p_value, 1.0);
    EXPECT_TRUE(balanced.passed);
    const auto ones = hedge::monobit(repeated(0xFF, 2500));
    EXPECT_LT(ones.p_value, 1e-100);
    EXPECT_FALSE(ones.passed);
}

TEST(Monobit, MatchesErfcOracle) {
    const auto data = fixture::biased_bytes(2048, 2048, 0.505);
    expect_p_close(hedge::monobit(stream(data)).p_value, oracle::monobit_p(data));
}

// ---------------------------------------------------------------------------
// FIPS 140-2

TEST(Poker, AllZeroBlock) {
    const auto s = repeated(0, 2500);
    const auto r = hedge::poker(hedge::bits(s));
    EXPECT_DOUBLE_EQ(r.statistic, 75000.0);
    EXPECT_FALSE(r.passed);
}

TEST(Poker, BoundsAreStrict) {
    // Sums of squared nibble counts share the parity of 5000, so X = 2.16 is not reachable
    // from a real block; the acceptance predicate is checked directly.
    EXPECT_FALSE(hedge::poker_statistic_passes(2.16));
    EXPECT_TRUE(hedge::poker_statistic_passes(std::nextafter(2.16, 3.0)));
    EXPECT_FALSE(hedge::poker_statistic_passes(46.17));
    EXPECT_TRUE(hedge::poker_statistic_passes(std::nextafter(46.17, 0.0)));
}

TEST(Poker, MatchesNibbleOracle) {
    const auto data = fixture::random_bytes(20000, 2500);
    const auto s = stream(data);
    EXPECT_NEAR(hedge::poker(hedge::bits(s)).statistic, oracle::poker_x(oracle::to_bits(data)), 1e-9);
}

TEST(Poker, UnalignedBlockAgreesWithOracle) {
    const auto data = fixture::random_bytes(20001, 2501);
    const auto s = stream(data);
    const auto bits = oracle::to_bits(data);
    const std::vector<int> shifted(bits.begin() + 3, bits.begin() + 3 + 20000);
    EXPECT_NEAR(hedge::poker(hedge::bits(s).subview(3, 20000)).statistic, oracle::poker_x(shifted), 1e-9);
}

TEST(Poker, WrongBlockSizeRejected) {
    const auto s = repeated(0, 2499);
    EXPECT_THROW((void)hedge::poker(hedge::bits(s)), std::invalid_argument);
}

TEST(Runs, DegenerateBlocks) {
    const auto zeros = repeated(0, 2500);
    const auto r = hedge::runs(hedge::bits(zeros));
    EXPECT_EQ(r.zeros[5], 1u);
    EXPECT_FALSE(r.passed);
    const auto alt = repeated(0xAA, 2500);
    const auto a = hedge::runs(hedge::bits(alt));
    EXPECT_EQ(a.zeros[0], 10000u);
    EXPECT_EQ(a.ones[0], 10000u);
    EXPECT_FALSE(a.passed);
}

TEST(Runs, MatchesLinearScanOracle) {
    const auto data = fixture::random_bytes(777, 2500);
    const auto s = stream(data);
    const auto got = hedge::runs(hedge::bits(s));
    const auto want = oracle::runs(oracle::to_bits(data));
    EXPECT_EQ(got.zeros, want.zeros);
    EXPECT_EQ(got.ones, want.ones);
    EXPECT_TRUE(got.passed);
}

TEST(LongRuns, Boundaries) {
    const auto zeros = repeated(0, 2500);
    EXPECT_EQ(hedge::long_runs(hedge::bits(zeros)).max_run, 20000u);
    const auto alt = repeated(0xAA, 2500);
    EXPECT_EQ(hedge::long_runs(hedge::bits(alt)).max_run, 1u);
    EXPECT_TRUE(hedge::long_runs(hedge::bits(alt)).passed);

    auto with_run = [](std::size_t len) {
        std::vector<std::uint8_t> v(2500, 0xAA);
        std::vector<int> bits = oracle::to_bits(v);
        // bits[100] is 1 and bits[99] is 0; overwrite a run of ones ending before a 0.
        for (std::size_t i = 100; i < 100 + len; ++i) bits[i] = 1;
        bits[100 + len] = 0;
        std::vector<std::uint8_t> out(2500, 0);
        for (std::size_t i = 0; i < bits.size(); ++i) out[i / 8] |= static_cast<std::uint8_t>(bits[i] << (7 - i % 8));
        return out;
    };
    const auto s25 = stream(with_run(25));
    const auto s26 = stream(with_run(26));
    EXPECT_EQ(hedge::long_runs(hedge::bits(s25)).max_run, 25u);
    EXPECT_TRUE(hedge::long_runs(hedge::bits(s25)).passed);
    EXPECT_EQ(hedge::long_runs(hedge::bits(s26)).max_run, 26u);
    EXPECT_FALSE(hedge::long_runs(hedge::bits(s26)).passed);
}

TEST(Fips, AllZeroSingleBlock) {
    const auto r = hedge::fips_140_2(repeated(0, 2500));
    EXPECT_EQ(r.blocks_tested, 1u);
    EXPECT_FALSE(r.monobit_pass);
    EXPECT_FALSE(r.poker_pass);
    EXPECT_FALSE(r.runs_pass);
    EXPECT_FALSE(r.long_runs_pass);
}

TEST(Fips, ComposesPerBlock) {
    const auto data = fixture::random_bytes(5000, 5000);
    const auto s = stream(data);
    const auto r = hedge::fips_140_2(s);
    ASSERT_EQ(r.blocks_tested, 2u);
    for (std::size_t b = 0; b < 2; ++b) {
        const auto view = hedge::bits(s).subview(b * 20000, 20000);
        const auto bits = oracle::to_bits(std::span(data).subspan(b * 2500, 2500));
        std::size_t ones = 0;
        for (int x : bits) ones += static_cast<std::size_t>(x);
        EXPECT_EQ(r.blocks[b].ones, ones);
        EXPECT_EQ(r.blocks[b].monobit_pass, ones > 9725 - 1 && ones < 10275 + 1);
        EXPECT_EQ(r.blocks[b].poker_pass, hedge::poker(view).passed);
        EXPECT_EQ(r.blocks[b].runs_pass, hedge::runs(view).passed);
        EXPECT_EQ(r.blocks[b].long_runs_pass, hedge::long_runs(view).passed);
    }
}

TEST(Fips, ShortStreamRejected) {
    EXPECT_THROW((void)hedge::fips_140_2(repeated(0, 2499)), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// SP 800-22 subset

TEST(BlockFrequency, BalancedAndBiased) {
    const auto balanced = hedge::block_frequency(repeated(0xAA, 1024));
    EXPECT_DOUBLE_EQ(balanced.p_value, 1.0);
    EXPECT_TRUE(balanced.passed);
    const auto ones = hedge::block_frequency(repeated(0xFF, 1024));  // N = 64 blocks
    EXPECT_LT(ones.p_value, 1e-100);
    EXPECT_FALSE(ones.passed);
}

TEST(BlockFrequency, MatchesFormulaOracle) {
    const auto data = fixture::biased_bytes(8192, 8192, 0.503);
    expect_p_close(hedge::block_frequency(stream(data)).p_value, oracle::block_frequency_p(data, 128));
    hedge::TestConfig cfg;
    cfg.block_frequency_M = 100;  // not a byte multiple
    expect_p_close(hedge::block_frequency(stream(data), cfg).p_value, oracle::block_frequency_p(data, 100));
}

TEST(CumulativeSums, MinimalAndMaximalExcursion) {
    const auto alt = hedge::cumulative_sums(repeated(0xAA, 128));
    EXPECT_GT(alt.p_value, 0.99);
    EXPECT_TRUE(alt.passed);
    const auto ones = hedge::cumulative_sums(repeated(0xFF, 100));
    EXPECT_LT(ones.p_value, 1e-12);
    EXPECT_FALSE(ones.passed);
}

TEST(CumulativeSums, MatchesPartialSumOracle) {
    const auto data = fixture::random_bytes(4096, 4096);
    expect_p_close(hedge::cumulative_sums(stream(data)).p_value, oracle::cumulative_sums_p(data));
}

TEST(ApproximateEntropy, DegenerateStreams) {
    const auto zeros = hedge::approximate_entropy(repeated(0, 1024));
    EXPECT_LT(zeros.p_value, 1e-100);
    EXPECT_FALSE(zeros.passed);
    const auto alt = hedge::approximate_entropy(repeated(0xAA, 1024));
    EXPECT_LT(alt.p_value, 1e-100);
    EXPECT_FALSE(alt.passed);
}

TEST(ApproximateEntropy, MatchesPatternOracle) {
    const auto data = fixture::random_bytes(2048, 2048);
    expect_p_close(hedge::approximate_entropy(stream(data)).p_value, oracle::approximate_entropy_p(data, 2));
    hedge::TestConfig cfg;
    cfg.apen_m = 5;
    expect_p_close(hedge::approximate_entropy(stream(data), cfg).p_value, oracle::approximate_entropy_p(data, 5));
}

TEST(ApproximateEntropy, BlockLengthLimit) {
    hedge::TestConfig cfg;
    cfg.apen_m = 9;  // 1024 bytes -> log2(8192) - 5 = 8
    EXPECT_THROW((void)hedge::approximate_entropy(repeated(1, 1024), cfg), std::invalid_argument);
}

TEST(TestConfig, Validation) {
    hedge::TestConfig cfg;
    cfg.alpha = 0.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.alpha = 0.01;
    cfg.block_frequency_M = 4;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST(RunAll, AllZeroKilobyte) {
    const auto r = hedge::run_all(repeated(0, 1024));
    EXPECT_LT(r.chi.confidence_pct, 1e-6);
    EXPECT_EQ(r.nist_fail_count, 3);
}

TEST(RunAll, EncryptedChunksMostlyPassNist) {
    int clean = 0;
    for (std::uint64_t i = 0; i < 100; ++i)
        clean += hedge::run_all(stream(fixture::encrypted_chunk(i, 65536))).nist_fail_count == 0;
    EXPECT_GE(clean, 95);
}

TEST(RunAll, FailCountConsistentWithPValues) {
    hedge::TestConfig cfg;
    for (std::uint64_t i = 0; i < 40; ++i) {
        const auto data = i % 2 ? fixture::biased_bytes(i, 2048, 0.51) : fixture::compressed_chunk(i, 2048);
        const auto r = hedge::run_all(stream(data), cfg, true);
        const int fails = (r.block_frequency.p_value < cfg.alpha) + (r.cumulative_sums.p_value < cfg.alpha) +
                          (r.approximate_entropy.p_value < cfg.alpha);
        EXPECT_EQ(r.nist_fail_count, fails);
        ASSERT_TRUE(r.diagnostics.has_value());
        EXPECT_FALSE(r.diagnostics->fips.has_value());
    }
}

TEST(RunAll, BelowFloorRejected) {
    EXPECT_THROW((void)hedge::run_all(repeated(0, 1023)), std::invalid_argument);
}

TEST(Instrumentation, CountsSpCalls) {
    const auto s = stream(fixture::random_bytes(9, 1024));
    const auto before = hedge::instrumentation::sp800_22_calls;
    (void)hedge::run_all(s);
    EXPECT_EQ(hedge::instrumentation::sp800_22_calls - before, 3u);
}
