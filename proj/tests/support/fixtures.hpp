// Seeded byte fixtures and scratch directories shared by the unit and acceptance tests.

#ifndef HEDGE_TESTS_FIXTURES_HPP
#define HEDGE_TESTS_FIXTURES_HPP

#include "hedge/digest.hpp"
#include "hedge/transforms.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace fixture {

inline std::vector<std::uint8_t> random_bytes(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(rng() >> 56);
    return out;
}

/// Bits are 1 with probability `p_one`; skews every statistic away from uniform.
inline std::vector<std::uint8_t> biased_bytes(std::uint64_t seed, std::size_t n, double p_one) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution bit(p_one);
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) {
        unsigned v = 0;
        for (int k = 0; k < 8; ++k) v = (v << 1) | static_cast<unsigned>(bit(rng));
        b = static_cast<std::uint8_t>(v);
    }
    return out;
}

/// Natural-language-like filler: a small alphabet with skewed frequencies.
inline std::vector<std::uint8_t> text_bytes(std::uint64_t seed, std::size_t n) {
    static const std::string alphabet = "eeeeetttaaooiinnsshhrrdlu ,.\r\n      cmfwypvbgkqjxz";
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(alphabet[rng() % alphabet.size()]);
    return out;
}

inline std::vector<std::uint8_t> aes_ctr(std::span<const std::uint8_t> plaintext, std::uint64_t seed) {
    std::array<std::uint8_t, 16> key{};
    std::array<std::uint8_t, 16> iv{};
    std::mt19937_64 rng(hedge::derive_seed(seed, 0xAE5));
    for (auto& b : key) b = static_cast<std::uint8_t>(rng());
    for (auto& b : iv) b = static_cast<std::uint8_t>(rng());
    return hedge::encrypt_ctr(hedge::Method::AES128, plaintext, key, iv);
}

inline std::vector<std::uint8_t> encrypted_chunk(std::uint64_t seed, std::size_t n) {
    return aes_ctr(text_bytes(hedge::derive_seed(seed, 1), n), seed);
}

inline std::vector<std::uint8_t> compressed_chunk(std::uint64_t seed, std::size_t n) {
    auto out = hedge::gzip_compress(text_bytes(seed, n * 4));
    out.resize(n);
    return out;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("hedge-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace fixture

#endif // HEDGE_TESTS_FIXTURES_HPP
