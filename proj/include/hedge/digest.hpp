// hedge - encrypted vs. compressed payload classification
// SHA-256 helpers and deterministic seed derivation.

#ifndef HEDGE_DIGEST_HPP
#define HEDGE_DIGEST_HPP

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hedge {

using Sha256 = std::array<std::uint8_t, 32>;

/// Incremental SHA-256 over OpenSSL's EVP interface.
class Sha256Hasher {
public:
    Sha256Hasher() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
            throw std::runtime_error("SHA-256 initialisation failed");
    }

    Sha256Hasher& update(std::span<const std::uint8_t> data) {
        if (EVP_DigestUpdate(ctx_.get(), data.data(), data.size()) != 1)
            throw std::runtime_error("SHA-256 update failed");
        return *this;
    }

    Sha256Hasher& update(std::string_view text) {
        return update({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
    }

    Sha256Hasher& update_u64(std::uint64_t v) {
        std::array<std::uint8_t, 8> le{};
        for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>(v >> (8 * i));
        return update(le);
    }

    [[nodiscard]] Sha256 finish() {
        Sha256 out{};
        unsigned len = 0;
        if (EVP_DigestFinal_ex(ctx_.get(), out.data(), &len) != 1 || len != out.size())
            throw std::runtime_error("SHA-256 finalisation failed");
        return out;
    }

private:
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

[[nodiscard]] inline Sha256 sha256(std::span<const std::uint8_t> data) {
    return Sha256Hasher{}.update(data).finish();
}

[[nodiscard]] inline std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0F]);
    }
    return out;
}

/// SplitMix64 finaliser; a good 64-bit mixer for deriving independent sub-seeds.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
    return mix64(seed ^ mix64(tag));
}

template <typename... Tags>
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, Tags... more) noexcept {
    return derive_seed(derive_seed(seed, tag), static_cast<std::uint64_t>(more)...);
}

/// Uniform double in [0, 1) from a 64-bit hash.
[[nodiscard]] constexpr double unit_interval(std::uint64_t h) noexcept {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// FNV-1a, used to turn short strings into seed tags.
[[nodiscard]] constexpr std::uint64_t string_tag(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace hedge

#endif // HEDGE_DIGEST_HPP
