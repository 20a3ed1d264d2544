// hedge - encrypted vs. compressed payload classification
// Encryption and compression back ends used to derive corpus variants.

#ifndef HEDGE_TRANSFORMS_HPP
#define HEDGE_TRANSFORMS_HPP

#include "hedge/digest.hpp"

#include <boost/iostreams/device/back_inserter.hpp>
#include <boost/iostreams/filter/bzip2.hpp>
#include <boost/iostreams/filtering_stream.hpp>
#include <openssl/evp.h>
#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hedge {

using Bytes = std::vector<std::uint8_t>;

enum class TransformKind { Encrypt, Compress };

enum class Method { AES128, AES192, AES256, CAMELLIA128, CAMELLIA192, CAMELLIA256, ZIP, RAR, BZIP2, GZIP };

inline constexpr std::array<Method, 10> kAllMethods{
    Method::AES128,      Method::AES192,      Method::AES256, Method::CAMELLIA128, Method::CAMELLIA192,
    Method::CAMELLIA256, Method::ZIP,         Method::RAR,    Method::BZIP2,       Method::GZIP};

[[nodiscard]] constexpr TransformKind kind_of(Method m) noexcept {
    switch (m) {
        case Method::ZIP:
        case Method::RAR:
        case Method::BZIP2:
        case Method::GZIP: return TransformKind::Compress;
        default: return TransformKind::Encrypt;
    }
}

[[nodiscard]] constexpr std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::AES128: return "AES-128";
        case Method::AES192: return "AES-192";
        case Method::AES256: return "AES-256";
        case Method::CAMELLIA128: return "CAMELLIA-128";
        case Method::CAMELLIA192: return "CAMELLIA-192";
        case Method::CAMELLIA256: return "CAMELLIA-256";
        case Method::ZIP: return "ZIP";
        case Method::RAR: return "RAR";
        case Method::BZIP2: return "BZIP2";
        case Method::GZIP: return "GZIP";
    }
    return "?";
}

[[nodiscard]] constexpr std::string_view to_string(TransformKind k) noexcept {
    return k == TransformKind::Encrypt ? "Encrypt" : "Compress";
}

[[nodiscard]] inline Method parse_method(std::string_view name) {
    for (auto m : kAllMethods)
        if (to_string(m) == name) return m;
    throw std::invalid_argument("unknown transform method '" + std::string(name) + "'");
}

[[nodiscard]] inline TransformKind parse_kind(std::string_view name) {
    if (name == "Encrypt") return TransformKind::Encrypt;
    if (name == "Compress") return TransformKind::Compress;
    throw std::invalid_argument("unknown transform kind '" + std::string(name) + "'");
}

struct Transform {
    TransformKind kind = TransformKind::Encrypt;
    Method method = Method::AES128;

    static Transform of(Method m) noexcept { return {kind_of(m), m}; }
    friend bool operator==(const Transform&, const Transform&) = default;
};

// ---------------------------------------------------------------------------
// Ciphers: CTR mode, raw ciphertext only.

namespace detail {
inline const EVP_CIPHER* ctr_cipher(Method m) {
    switch (m) {
        case Method::AES128: return EVP_aes_128_ctr();
        case Method::AES192: return EVP_aes_192_ctr();
        case Method::AES256: return EVP_aes_256_ctr();
        case Method::CAMELLIA128: return EVP_camellia_128_ctr();
        case Method::CAMELLIA192: return EVP_camellia_192_ctr();
        case Method::CAMELLIA256: return EVP_camellia_256_ctr();
        default: throw std::invalid_argument("not a cipher: " + std::string(to_string(m)));
    }
}
} // namespace detail

[[nodiscard]] inline std::size_t key_bytes(Method m) {
    return static_cast<std::size_t>(EVP_CIPHER_get_key_length(detail::ctr_cipher(m)));
}

[[nodiscard]] inline bool cipher_available(Method m) {
    return kind_of(m) == TransformKind::Encrypt && detail::ctr_cipher(m) != nullptr;
}

/// CTR-mode encryption; `key` must match the method's key length, `iv` is the 16-byte counter block.
[[nodiscard]] inline Bytes encrypt_ctr(Method m, std::span<const std::uint8_t> plaintext,
                                       std::span<const std::uint8_t> key, std::span<const std::uint8_t, 16> iv) {
    const EVP_CIPHER* cipher = detail::ctr_cipher(m);
    if (!cipher) throw std::runtime_error(std::string(to_string(m)) + " is not provided by the crypto library");
    if (key.size() != key_bytes(m)) throw std::invalid_argument("encrypt_ctr: wrong key length");
    std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(EVP_CIPHER_CTX_new(), &EVP_CIPHER_CTX_free);
    if (!ctx || EVP_EncryptInit_ex(ctx.get(), cipher, nullptr, key.data(), iv.data()) != 1)
        throw std::runtime_error("cipher initialisation failed");
    Bytes out(plaintext.size() + 16);
    std::size_t written = 0;
    constexpr std::size_t step = 1 << 30;
    for (std::size_t off = 0; off < plaintext.size(); off += step) {
        const int chunk = static_cast<int>(std::min(step, plaintext.size() - off));
        int len = 0;
        if (EVP_EncryptUpdate(ctx.get(), out.data() + written, &len, plaintext.data() + off, chunk) != 1)
            throw std::runtime_error("cipher update failed");
        written += static_cast<std::size_t>(len);
    }
    int tail = 0;
    if (EVP_EncryptFinal_ex(ctx.get(), out.data() + written, &tail) != 1)
        throw std::runtime_error("cipher finalisation failed");
    out.resize(written + static_cast<std::size_t>(tail));
    return out;
}

// ---------------------------------------------------------------------------
// Compressors: full container output, headers included.

namespace detail {

inline Bytes deflate_stream(std::span<const std::uint8_t> in, int window_bits, int level) {
    z_stream zs{};
    if (deflateInit2(&zs, level, Z_DEFLATED, window_bits, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        throw std::runtime_error("zlib deflateInit2 failed");
    Bytes out(deflateBound(&zs, static_cast<uLong>(in.size())) + 64);
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = deflate(&zs, Z_FINISH);
    const std::size_t produced = zs.total_out;
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) throw std::runtime_error("zlib deflate did not finish");
    out.resize(produced);
    return out;
}

inline void put_le16(Bytes& b, std::uint32_t v) {
    b.push_back(static_cast<std::uint8_t>(v));
    b.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_le32(Bytes& b, std::uint32_t v) {
    put_le16(b, v & 0xFFFF);
    put_le16(b, v >> 16);
}

// Locates an executable on PATH.
inline std::optional<std::filesystem::path> find_program(std::string_view name) {
    const char* path = std::getenv("PATH");
    if (!path) return std::nullopt;
    std::string_view rest(path);
    while (!rest.empty()) {
        const auto colon = rest.find(':');
        const auto dir = rest.substr(0, colon);
        if (!dir.empty()) {
            std::error_code ec;
            auto candidate = std::filesystem::path(dir) / name;
            if (std::filesystem::is_regular_file(candidate, ec)) return candidate;
        }
        if (colon == std::string_view::npos) break;
        rest.remove_prefix(colon + 1);
    }
    return std::nullopt;
}

} // namespace detail

/// gzip member (RFC 1952) with zero mtime and no stored name.
[[nodiscard]] inline Bytes gzip_compress(std::span<const std::uint8_t> in, int level = 6) {
    return detail::deflate_stream(in, 15 + 16, level);
}

/// Single-entry ZIP archive holding `entry_name`, deflate-compressed.
[[nodiscard]] inline Bytes zip_compress(std::span<const std::uint8_t> in, std::string_view entry_name, int level = 6) {
    if (in.size() >= 0xFFFFFFFFull) throw std::invalid_argument("zip_compress: entry too large for a non-ZIP64 archive");
    const Bytes body = detail::deflate_stream(in, -15, level);
    const auto crc = static_cast<std::uint32_t>(crc32(0L, in.data(), static_cast<uInt>(in.size())));
    const auto csize = static_cast<std::uint32_t>(body.size());
    const auto usize = static_cast<std::uint32_t>(in.size());
    const auto name_len = static_cast<std::uint32_t>(entry_name.size());
    constexpr std::uint32_t dos_time = 0;
    constexpr std::uint32_t dos_date = (0 << 9) | (1 << 5) | 1;  // 1980-01-01

    Bytes out;
    out.reserve(body.size() + 2 * entry_name.size() + 128);
    detail::put_le32(out, 0x04034b50);
    detail::put_le16(out, 20);
    detail::put_le16(out, 0);
    detail::put_le16(out, 8);
    detail::put_le16(out, dos_time);
    detail::put_le16(out, dos_date);
    detail::put_le32(out, crc);
    detail::put_le32(out, csize);
    detail::put_le32(out, usize);
    detail::put_le16(out, name_len);
    detail::put_le16(out, 0);
    out.insert(out.end(), entry_name.begin(), entry_name.end());
    out.insert(out.end(), body.begin(), body.end());

    const auto central_offset = static_cast<std::uint32_t>(out.size());
    detail::put_le32(out, 0x02014b50);
    detail::put_le16(out, (3 << 8) | 20);
    detail::put_le16(out, 20);
    detail::put_le16(out, 0);
    detail::put_le16(out, 8);
    detail::put_le16(out, dos_time);
    detail::put_le16(out, dos_date);
    detail::put_le32(out, crc);
    detail::put_le32(out, csize);
    detail::put_le32(out, usize);
    detail::put_le16(out, name_len);
    detail::put_le16(out, 0);
    detail::put_le16(out, 0);
    detail::put_le16(out, 0);
    detail::put_le16(out, 0);
    detail::put_le32(out, 0100644u << 16);
    detail::put_le32(out, 0);
    out.insert(out.end(), entry_name.begin(), entry_name.end());
    const auto central_size = static_cast<std::uint32_t>(out.size()) - central_offset;

    detail::put_le32(out, 0x06054b50);
    detail::put_le16(out, 0);
    detail::put_le16(out, 0);
    detail::put_le16(out, 1);
    detail::put_le16(out, 1);
    detail::put_le32(out, central_size);
    detail::put_le32(out, central_offset);
    detail::put_le16(out, 0);
    return out;
}

[[nodiscard]] inline Bytes bzip2_compress(std::span<const std::uint8_t> in, int block_size = 9) {
    std::string packed;
    {
        namespace io = boost::iostreams;
        io::filtering_ostream os;
        os.push(io::bzip2_compressor(io::bzip2_params(block_size)));
        os.push(io::back_inserter(packed));
        os.write(reinterpret_cast<const char*>(in.data()), static_cast<std::streamsize>(in.size()));
        os.reset();
    }
    return Bytes(packed.begin(), packed.end());
}

/// Path of an external RAR archiver, if one is installed.
[[nodiscard]] inline std::optional<std::filesystem::path> rar_program() { return detail::find_program("rar"); }

/// RAR archive produced by the external `rar` executable; nullopt when none is installed.
[[nodiscard]] inline std::optional<Bytes> rar_compress(std::span<const std::uint8_t> in, std::string_view entry_name,
                                                       const std::filesystem::path& scratch_dir) {
    const auto program = rar_program();
    if (!program) return std::nullopt;
    namespace fs = std::filesystem;
    const auto work = scratch_dir / ("rar-" + to_hex(sha256(in)).substr(0, 16));
    fs::create_directories(work);
    const auto input = work / std::string(entry_name);
    const auto archive = work / "out.rar";
    {
        std::ofstream f(input, std::ios::binary);
        f.write(reinterpret_cast<const char*>(in.data()), static_cast<std::streamsize>(in.size()));
    }
    fs::remove(archive);
    const std::string cmd = "\"" + program->string() + "\" a -m3 -ep -idq -tsm- -tsc- -tsa- \"" +
                            archive.string() + "\" \"" + input.string() + "\" >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    std::optional<Bytes> result;
    if (rc == 0 && fs::exists(archive)) {
        std::ifstream f(archive, std::ios::binary);
        result.emplace(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    std::error_code ec;
    fs::remove_all(work, ec);
    if (!result) throw std::runtime_error("external rar archiver failed on " + std::string(entry_name));
    return result;
}

[[nodiscard]] inline bool method_available(Method m) {
    if (kind_of(m) == TransformKind::Encrypt) return cipher_available(m);
    if (m == Method::RAR) return rar_program().has_value();
    return true;
}

} // namespace hedge

#endif // HEDGE_TRANSFORMS_HPP
