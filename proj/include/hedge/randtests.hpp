// hedge - encrypted vs. compressed payload classification
// Randomness tests over a single payload: ent-style byte statistics, the FIPS 140-2
// battery and the three SP 800-22 tests used as classifier features.

#ifndef HEDGE_RANDTESTS_HPP
#define HEDGE_RANDTESTS_HPP

#include "hedge/bitstream.hpp"
#include "hedge/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hedge {

/// SP 800-22 parameters and significance level.
struct TestConfig {
    double alpha = 0.01;
    std::size_t block_frequency_M = 128;
    unsigned apen_m = 2;

    void validate() const {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("TestConfig: alpha must lie in (0, 1)");
        if (block_frequency_M < 8)
            throw std::invalid_argument("TestConfig: block_frequency_M must be >= 8");
        if (apen_m < 1)
            throw std::invalid_argument("TestConfig: apen_m must be >= 1");
    }
};

struct ChiSquareResult {
    double statistic = 0.0;       ///< goodness-of-fit statistic over the byte histogram
    double confidence_pct = 0.0;  ///< chance (in %) that uniform data exceeds `statistic`
    unsigned degrees_of_freedom = 255;
};

struct PValueResult {
    double p_value = 0.0;
    bool passed = false;
};

struct MonteCarloPiResult {
    double estimate = 0.0;
    std::size_t points_used = 0;
};

struct PokerResult {
    double statistic = 0.0;
    bool passed = false;
};

/// Run counts bucketed by length 1..5 and 6+ (index 5).
struct RunsResult {
    bool passed = false;
    std::array<std::size_t, 6> zeros{};
    std::array<std::size_t, 6> ones{};
};

struct LongRunsResult {
    bool passed = false;
    std::size_t max_run = 0;
};

struct FipsBlockResult {
    std::size_t ones = 0;
    bool monobit_pass = false;
    bool poker_pass = false;
    bool runs_pass = false;
    bool long_runs_pass = false;

    [[nodiscard]] bool passed() const noexcept {
        return monobit_pass && poker_pass && runs_pass && long_runs_pass;
    }
};

/// FIPS 140-2 battery over consecutive 20,000-bit blocks. A sub-test "passes"
/// in aggregate only if it passed on every block.
struct FipsResult {
    bool monobit_pass = true;
    bool poker_pass = true;
    bool runs_pass = true;
    bool long_runs_pass = true;
    std::size_t blocks_tested = 0;
    std::size_t blocks_failed = 0;
    std::vector<FipsBlockResult> blocks;
};

/// Statistics that are reported but never used by the classifier.
struct Diagnostics {
    double entropy_bits_per_byte = 0.0;
    double mean_byte = 0.0;
    double autocorrelation_lag1 = 0.0;
    MonteCarloPiResult monte_carlo_pi;
    PValueResult monobit;
    std::optional<FipsResult> fips;  ///< absent below one 20,000-bit block
};

/// All test outcomes for one stream. `nist_fail_count` counts failures among
/// block frequency, cumulative sums and approximate entropy (0..3).
struct RandomnessReport {
    ChiSquareResult chi;
    PValueResult block_frequency;
    PValueResult cumulative_sums;
    PValueResult approximate_entropy;
    int nist_fail_count = 0;
    std::optional<Diagnostics> diagnostics;
};

inline constexpr std::size_t kFipsBlockBits = 20'000;
inline constexpr std::size_t kMinChiSquareBytes = 256;
inline constexpr std::size_t kMinReportBytes = 1024;

namespace instrumentation {
/// Number of SP 800-22 test evaluations on the calling thread.
inline thread_local std::uint64_t sp800_22_calls = 0;
} // namespace instrumentation

namespace detail {

inline void require_bits(const ByteStream& s, std::size_t min_bits, const char* what) {
    if (s.length_bits() < min_bits)
        throw std::invalid_argument(std::string(what) + ": stream shorter than " +
                                    std::to_string(min_bits) + " bits");
}

inline void require_fips_block(const BitView& block, const char* what) {
    if (block.size() != kFipsBlockBits)
        throw std::invalid_argument(std::string(what) + ": block must be exactly 20000 bits, got " +
                                    std::to_string(block.size()));
}

inline PValueResult make_pvalue(double p, double alpha) {
    p = std::clamp(p, 0.0, 1.0);
    return {p, p >= alpha};
}

// Per-byte walk summary for the cumulative sums test: net +/-1 sum of the eight
// bits and the extreme prefix sums, MSB first.
struct ByteWalk {
    int delta = 0;
    int max_prefix = 0;
    int min_prefix = 0;
};

inline constexpr std::array<ByteWalk, 256> make_byte_walks() {
    std::array<ByteWalk, 256> table{};
    for (int v = 0; v < 256; ++v) {
        int s = 0;
        int hi = -9;
        int lo = 9;
        for (int b = 7; b >= 0; --b) {
            s += ((v >> b) & 1) ? 1 : -1;
            hi = s > hi ? s : hi;
            lo = s < lo ? s : lo;
        }
        table[v] = {s, hi, lo};
    }
    return table;
}

inline constexpr auto kByteWalks = make_byte_walks();

} // namespace detail

// ---------------------------------------------------------------------------
// Byte-level statistics

/// Shannon entropy of the byte distribution, in bits per byte.
[[nodiscard]] inline double shannon_entropy(const ByteStream& s) {
    if (s.empty()) throw std::invalid_argument("shannon_entropy: empty stream");
    const auto counts = byte_histogram(s);
    const double n = static_cast<double>(s.length_bytes());
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    return std::max(h, 0.0);
}

/// Pearson chi-square of the byte histogram against the uniform distribution (df = 255).
[[nodiscard]] inline ChiSquareResult chi_square(const ByteStream& s) {
    if (s.length_bytes() < kMinChiSquareBytes)
        throw std::invalid_argument("chi_square: stream must hold at least 256 bytes, got " +
                                    std::to_string(s.length_bytes()));
    const auto counts = byte_histogram(s);
    const double expected = static_cast<double>(s.length_bytes()) / 256.0;
    double statistic = 0.0;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        statistic += d * d;
    }
    statistic /= expected;
    ChiSquareResult r;
    r.statistic = statistic;
    r.degrees_of_freedom = 255;
    r.confidence_pct = std::clamp(100.0 * special::chi_square_sf(statistic, 255.0), 0.0, 100.0);
    return r;
}

/// Pearson correlation of the byte sequence with itself shifted by `lag`.
[[nodiscard]] inline double autocorrelation(const ByteStream& s, std::size_t lag) {
    const auto data = s.bytes();
    if (lag == 0) throw std::invalid_argument("autocorrelation: lag must be positive");
    if (data.size() < 2 || lag >= data.size() - 1)
        throw std::invalid_argument("autocorrelation: lag must be smaller than length_bytes - 1");
    const std::size_t count = data.size() - lag;
    double mean_a = 0.0;
    double mean_b = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        mean_a += data[i];
        mean_b += data[i + lag];
    }
    mean_a /= static_cast<double>(count);
    mean_b /= static_cast<double>(count);
    double cov = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double da = data[i] - mean_a;
        const double db = data[i + lag] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) return 0.0;
    return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

[[nodiscard]] inline double mean_byte(const ByteStream& s) {
    if (s.empty()) throw std::invalid_argument("mean_byte: empty stream");
    std::uint64_t sum = 0;
    for (auto b : s.bytes()) sum += b;
    return static_cast<double>(sum) / static_cast<double>(s.length_bytes());
}

/// Monte Carlo estimate of pi: each 6-byte group is a point with two 24-bit
/// coordinates in [0, 1); the hit ratio inside the quarter circle times 4.
[[nodiscard]] inline MonteCarloPiResult monte_carlo_pi(const ByteStream& s) {
    const auto data = s.bytes();
    if (data.size() < 12) throw std::invalid_argument("monte_carlo_pi: need at least 12 bytes");
    constexpr std::uint64_t radius_sq = std::uint64_t{1} << 48;
    const std::size_t points = data.size() / 6;
    std::size_t inside = 0;
    for (std::size_t p = 0; p < points; ++p) {
        const auto* g = data.data() + 6 * p;
        const std::uint64_t x = (std::uint64_t{g[0]} << 16) | (std::uint64_t{g[1]} << 8) | g[2];
        const std::uint64_t y = (std::uint64_t{g[3]} << 16) | (std::uint64_t{g[4]} << 8) | g[5];
        if (x * x + y * y < radius_sq) ++inside;
    }
    return {4.0 * static_cast<double>(inside) / static_cast<double>(points), points};
}

// ---------------------------------------------------------------------------
// Bit-level tests

/// Frequency (monobit) test over the whole stream: p = erfc(|#1 - #0| / sqrt(2n)).
[[nodiscard]] inline PValueResult monobit(const ByteStream& s, const TestConfig& cfg = {}) {
    detail::require_bits(s, 100, "monobit");
    const double n = static_cast<double>(s.length_bits());
    const double ones = static_cast<double>(bits(s).count_ones());
    const double diff = std::fabs(2.0 * ones - n);
    return detail::make_pvalue(special::erfc(diff / std::sqrt(2.0 * n)), cfg.alpha);
}

/// Acceptance region of the poker statistic; both bounds are exclusive.
[[nodiscard]] constexpr bool poker_statistic_passes(double x) noexcept { return x > 2.16 && x < 46.17; }

/// FIPS 140-2 poker test on one 20,000-bit block.
[[nodiscard]] inline PokerResult poker(const BitView& block) {
    detail::require_fips_block(block, "poker");
    std::array<std::uint64_t, 16> f{};
    if (block.byte_aligned()) {
        for (auto b : block.aligned_bytes()) {
            ++f[b >> 4];
            ++f[b & 0x0F];
        }
    } else {
        for (std::size_t i = 0; i < kFipsBlockBits; i += 4) {
            unsigned v = 0;
            for (std::size_t j = 0; j < 4; ++j) v = (v << 1) | block[i + j];
            ++f[v];
        }
    }
    std::uint64_t sum_sq = 0;
    for (auto c : f) sum_sq += c * c;
    const double x = 16.0 / 5000.0 * static_cast<double>(sum_sq) - 5000.0;
    return {x, poker_statistic_passes(x)};
}

namespace detail {
struct RunInterval {
    std::size_t lo;
    std::size_t hi;
};
inline constexpr std::array<RunInterval, 6> kFipsRunIntervals{{
    {2315, 2685}, {1114, 1386}, {527, 723}, {240, 384}, {103, 209}, {103, 209}}};

// Calls visit(bit_value, run_length) for every maximal run.
template <typename Visit>
void for_each_run(const BitView& block, Visit&& visit) {
    if (block.empty()) return;
    bool current = block[0];
    std::size_t length = 1;
    for (std::size_t i = 1; i < block.size(); ++i) {
        const bool b = block[i];
        if (b == current) {
            ++length;
        } else {
            visit(current, length);
            current = b;
            length = 1;
        }
    }
    visit(current, length);
}
} // namespace detail

/// FIPS 140-2 runs test on one 20,000-bit block.
[[nodiscard]] inline RunsResult runs(const BitView& block) {
    detail::require_fips_block(block, "runs");
    RunsResult r;
    detail::for_each_run(block, [&](bool value, std::size_t length) {
        const std::size_t bucket = std::min<std::size_t>(length, 6) - 1;
        ++(value ? r.ones : r.zeros)[bucket];
    });
    r.passed = true;
    for (std::size_t k = 0; k < 6; ++k) {
        const auto [lo, hi] = detail::kFipsRunIntervals[k];
        for (auto count : {r.zeros[k], r.ones[k]})
            if (count < lo || count > hi) r.passed = false;
    }
    return r;
}

/// FIPS 140-2 long runs test: fails on any run longer than 25 bits.
[[nodiscard]] inline LongRunsResult long_runs(const BitView& block) {
    detail::require_fips_block(block, "long_runs");
    LongRunsResult r;
    detail::for_each_run(block, [&](bool, std::size_t length) { r.max_run = std::max(r.max_run, length); });
    r.passed = r.max_run <= 25;
    return r;
}

[[nodiscard]] inline FipsBlockResult fips_block(const BitView& block) {
    detail::require_fips_block(block, "fips_140_2");
    FipsBlockResult b;
    b.ones = block.count_ones();
    b.monobit_pass = b.ones >= 9725 && b.ones <= 10275;
    b.poker_pass = poker(block).passed;
    b.runs_pass = runs(block).passed;
    b.long_runs_pass = long_runs(block).passed;
    return b;
}

[[nodiscard]] inline FipsResult fips_140_2(const ByteStream& s) {
    if (s.length_bits() < kFipsBlockBits)
        throw std::invalid_argument("fips_140_2: stream shorter than one 20000-bit block (" +
                                    std::to_string(s.length_bits()) + " bits)");
    FipsResult r;
    for (const auto& block : split_blocks(s, kFipsBlockBits)) {
        const auto b = fips_block(block);
        r.monobit_pass = r.monobit_pass && b.monobit_pass;
        r.poker_pass = r.poker_pass && b.poker_pass;
        r.runs_pass = r.runs_pass && b.runs_pass;
        r.long_runs_pass = r.long_runs_pass && b.long_runs_pass;
        ++r.blocks_tested;
        if (!b.passed()) ++r.blocks_failed;
        r.blocks.push_back(b);
    }
    return r;
}

// ---------------------------------------------------------------------------
// SP 800-22 subset, each applied to the whole stream as one n-bit sequence

/// Frequency test within a block: chi^2 = 4M sum (pi_i - 1/2)^2, p = Q(N/2, chi^2/2).
[[nodiscard]] inline PValueResult block_frequency(const ByteStream& s, const TestConfig& cfg = {}) {
    cfg.validate();
    detail::require_bits(s, cfg.block_frequency_M, "block_frequency");
    ++instrumentation::sp800_22_calls;
    const std::size_t m = cfg.block_frequency_M;
    const auto blocks = split_blocks(s, m);
    double sum = 0.0;
    for (const auto& block : blocks) {
        const double pi = static_cast<double>(block.count_ones()) / static_cast<double>(m);
        sum += (pi - 0.5) * (pi - 0.5);
    }
    const double chi2 = 4.0 * static_cast<double>(m) * sum;
    const double p = special::gamma_q(static_cast<double>(blocks.size()) / 2.0, chi2 / 2.0);
    return detail::make_pvalue(p, cfg.alpha);
}

/// Cumulative sums test, forward mode.
[[nodiscard]] inline PValueResult cumulative_sums(const ByteStream& s, const TestConfig& cfg = {}) {
    cfg.validate();
    detail::require_bits(s, 100, "cumulative_sums");
    ++instrumentation::sp800_22_calls;
    long long sum = 0;
    long long z = 0;
    for (auto b : s.bytes()) {
        const auto& w = detail::kByteWalks[b];
        z = std::max({z, sum + w.max_prefix, -(sum + w.min_prefix)});
        sum += w.delta;
    }
    const double n = static_cast<double>(s.length_bits());
    const double zf = static_cast<double>(z);
    const double root_n = std::sqrt(n);

    double sum1 = 0.0;
    for (auto k = static_cast<long long>((-n / zf + 1.0) / 4.0); static_cast<double>(k) <= (n / zf - 1.0) / 4.0; ++k) {
        const double kd = static_cast<double>(k);
        sum1 += special::normal_cdf((4.0 * kd + 1.0) * zf / root_n) -
                special::normal_cdf((4.0 * kd - 1.0) * zf / root_n);
    }
    double sum2 = 0.0;
    for (auto k = static_cast<long long>((-n / zf - 3.0) / 4.0); static_cast<double>(k) <= (n / zf - 1.0) / 4.0; ++k) {
        const double kd = static_cast<double>(k);
        sum2 += special::normal_cdf((4.0 * kd + 3.0) * zf / root_n) -
                special::normal_cdf((4.0 * kd + 1.0) * zf / root_n);
    }
    return detail::make_pvalue(1.0 - sum1 + sum2, cfg.alpha);
}

namespace detail {
// phi(m) over overlapping (m+1)- and m-bit patterns with wraparound; returns {phi_m, phi_m1}.
inline std::pair<double, double> apen_phis(const ByteStream& s, unsigned m) {
    const std::size_t n = s.length_bits();
    const std::size_t mask = (std::size_t{1} << (m + 1)) - 1;
    std::vector<std::uint64_t> count_m(std::size_t{1} << m, 0);
    std::vector<std::uint64_t> count_m1(std::size_t{1} << (m + 1), 0);
    std::size_t window = 0;
    for (std::size_t i = 0; i < m; ++i) window = (window << 1) | s.bit(i);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = i + m;
        if (j >= n) j -= n;
        window = ((window << 1) | s.bit(j)) & mask;
        ++count_m1[window];
        ++count_m[window >> 1];
    }
    const double nd = static_cast<double>(n);
    auto phi = [nd](const std::vector<std::uint64_t>& counts) {
        double acc = 0.0;
        for (auto c : counts) {
            if (c == 0) continue;
            const double p = static_cast<double>(c) / nd;
            acc += p * std::log(p);
        }
        return acc;
    };
    return {phi(count_m), phi(count_m1)};
}
} // namespace detail

/// Approximate entropy test: chi^2 = 2n(ln 2 - ApEn(m)), p = Q(2^(m-1), chi^2/2).
[[nodiscard]] inline PValueResult approximate_entropy(const ByteStream& s, const TestConfig& cfg = {}) {
    cfg.validate();
    detail::require_bits(s, 100, "approximate_entropy");
    const double n = static_cast<double>(s.length_bits());
    if (!(static_cast<double>(cfg.apen_m) < std::log2(n) - 5.0))
        throw std::invalid_argument("approximate_entropy: apen_m must be < log2(n) - 5 (m=" +
                                    std::to_string(cfg.apen_m) + ", n=" + std::to_string(s.length_bits()) + ")");
    ++instrumentation::sp800_22_calls;
    const auto [phi_m, phi_m1] = detail::apen_phis(s, cfg.apen_m);
    const double apen = phi_m - phi_m1;
    const double chi2 = std::max(0.0, 2.0 * n * (std::log(2.0) - apen));
    const double p = special::gamma_q(std::ldexp(1.0, static_cast<int>(cfg.apen_m) - 1), chi2 / 2.0);
    return detail::make_pvalue(p, cfg.alpha);
}

// ---------------------------------------------------------------------------

[[nodiscard]] inline int count_nist_failures(const RandomnessReport& r) noexcept {
    return !r.block_frequency.passed + !r.cumulative_sums.passed + !r.approximate_entropy.passed;
}

[[nodiscard]] inline Diagnostics run_diagnostics(const ByteStream& s, const TestConfig& cfg = {}) {
    Diagnostics d;
    d.entropy_bits_per_byte = shannon_entropy(s);
    d.mean_byte = mean_byte(s);
    d.autocorrelation_lag1 = autocorrelation(s, 1);
    d.monte_carlo_pi = monte_carlo_pi(s);
    d.monobit = monobit(s, cfg);
    if (s.length_bits() >= kFipsBlockBits) d.fips = fips_140_2(s);
    return d;
}

/// Every feature the classifier consumes, plus the optional diagnostics.
[[nodiscard]] inline RandomnessReport run_all(const ByteStream& s, const TestConfig& cfg = {},
                                              bool with_diagnostics = false) {
    cfg.validate();
    if (s.length_bytes() < kMinReportBytes)
        throw std::invalid_argument("run_all: stream must hold at least 1024 bytes, got " +
                                    std::to_string(s.length_bytes()));
    RandomnessReport r;
    r.chi = chi_square(s);
    r.block_frequency = block_frequency(s, cfg);
    r.cumulative_sums = cumulative_sums(s, cfg);
    r.approximate_entropy = approximate_entropy(s, cfg);
    r.nist_fail_count = count_nist_failures(r);
    if (with_diagnostics) r.diagnostics = run_diagnostics(s, cfg);
    return r;
}

} // namespace hedge

#endif // HEDGE_RANDTESTS_HPP
