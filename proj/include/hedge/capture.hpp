// hedge - encrypted vs. compressed payload classification
// Offline packet-capture ingestion: classic pcap (both byte orders, micro- or
// nanosecond timestamps) over Ethernet, IPv4/IPv6, TCP/UDP. Each transport payload
// is one classification unit; there is no fragment or stream reassembly.

#ifndef HEDGE_CAPTURE_HPP
#define HEDGE_CAPTURE_HPP

#include "hedge/classifier.hpp"
#include "hedge/digest.hpp"
#include "hedge/parallel.hpp"
#include "hedge/transforms.hpp"

#include <arpa/inet.h>

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hedge {

class CaptureError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class UnsupportedCaptureFormat : public CaptureError {
    using CaptureError::CaptureError;
};

class CaptureParseError : public CaptureError {
public:
    CaptureParseError(std::size_t offset, const std::string& what)
        : CaptureError("capture parse error at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}
    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

enum class Transport { TCP, UDP };

[[nodiscard]] inline std::string_view to_string(Transport t) noexcept { return t == Transport::TCP ? "TCP" : "UDP"; }

struct IpAddress {
    bool v6 = false;
    std::array<std::uint8_t, 16> bytes{};  // IPv4 uses the first four

    [[nodiscard]] static IpAddress v4(std::uint8_t a, std::uint8_t b, std::uint8_t c, std::uint8_t d) {
        IpAddress ip;
        ip.bytes[0] = a;
        ip.bytes[1] = b;
        ip.bytes[2] = c;
        ip.bytes[3] = d;
        return ip;
    }
    [[nodiscard]] std::string str() const {
        char buf[INET6_ADDRSTRLEN] = {};
        inet_ntop(v6 ? AF_INET6 : AF_INET, bytes.data(), buf, sizeof buf);
        return buf;
    }
    friend bool operator==(const IpAddress&, const IpAddress&) = default;
};

struct CapturedPayload {
    std::size_t packet_index = 0;  // 0-based record position in the file
    std::uint32_t ts_sec = 0;
    std::uint32_t ts_frac = 0;  // micro- or nanoseconds, per the file's magic
    bool nanosecond = false;
    Transport transport = Transport::UDP;
    IpAddress src;
    IpAddress dst;
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    ByteStream payload;

    [[nodiscard]] std::string timestamp() const {
        char buf[40];
        if (nanosecond) std::snprintf(buf, sizeof buf, "%u.%09u", ts_sec, ts_frac);
        else std::snprintf(buf, sizeof buf, "%u.%06u", ts_sec, ts_frac);
        return buf;
    }
    friend bool operator==(const CapturedPayload&, const CapturedPayload&) = default;
};

struct CaptureStats {
    std::size_t records = 0;
    std::size_t emitted = 0;
    std::size_t skipped_non_ip = 0;         // not IPv4/IPv6 (ARP, LLDP, ...)
    std::size_t skipped_non_transport = 0;  // IP but neither TCP nor UDP
    std::size_t skipped_truncated = 0;
    std::size_t skipped_empty = 0;

    [[nodiscard]] std::size_t skipped() const noexcept {
        return skipped_non_ip + skipped_non_transport + skipped_truncated + skipped_empty;
    }
};

struct ParsedCapture {
    std::vector<CapturedPayload> payloads;
    CaptureStats stats;
    bool nanosecond = false;
    bool swapped = false;
    std::uint32_t snaplen = 0;
};

inline constexpr std::uint32_t kPcapMagicMicro = 0xA1B2C3D4;
inline constexpr std::uint32_t kPcapMagicNano = 0xA1B23C4D;
inline constexpr std::uint32_t kLinkTypeEthernet = 1;

namespace detail {

inline std::uint16_t be16(const std::uint8_t* p) { return static_cast<std::uint16_t>(p[0] << 8 | p[1]); }

inline std::uint32_t le32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

inline std::uint32_t bswap32(std::uint32_t v) {
    return (v >> 24) | ((v >> 8) & 0xFF00) | ((v << 8) & 0xFF0000) | (v << 24);
}

enum class FrameOutcome { Emitted, NonIp, NonTransport, Truncated, Empty };

// Ethernet -> IP -> transport for one captured frame.
inline FrameOutcome parse_frame(std::span<const std::uint8_t> f, CapturedPayload& out) {
    if (f.size() < 14) return FrameOutcome::Truncated;
    std::size_t off = 12;
    std::uint16_t ethertype = be16(&f[off]);
    off += 2;
    while (ethertype == 0x8100 || ethertype == 0x88A8 || ethertype == 0x9100) {
        if (f.size() < off + 4) return FrameOutcome::Truncated;
        ethertype = be16(&f[off + 2]);
        off += 4;
    }
    std::uint8_t proto = 0;
    std::size_t l4 = 0;
    std::size_t end = f.size();
    bool later_fragment = false;
    if (ethertype == 0x0800) {
        if (f.size() < off + 20) return FrameOutcome::Truncated;
        const auto* ip = &f[off];
        if ((ip[0] >> 4) != 4) return FrameOutcome::NonIp;
        const std::size_t ihl = static_cast<std::size_t>(ip[0] & 0x0F) * 4;
        const std::size_t total = be16(ip + 2);
        if (ihl < 20 || f.size() < off + ihl) return FrameOutcome::Truncated;
        // total_length 0 appears on segmentation-offloaded captures; trust the caplen then.
        if (total != 0) {
            if (total < ihl) return FrameOutcome::Truncated;
            if (off + total > f.size()) return FrameOutcome::Truncated;
            end = off + total;
        }
        later_fragment = (be16(ip + 6) & 0x1FFF) != 0;
        proto = ip[9];
        out.src.v6 = out.dst.v6 = false;
        out.src.bytes = {};
        out.dst.bytes = {};
        std::copy_n(ip + 12, 4, out.src.bytes.begin());
        std::copy_n(ip + 16, 4, out.dst.bytes.begin());
        l4 = off + ihl;
    } else if (ethertype == 0x86DD) {
        if (f.size() < off + 40) return FrameOutcome::Truncated;
        const auto* ip = &f[off];
        if ((ip[0] >> 4) != 6) return FrameOutcome::NonIp;
        const std::size_t plen = be16(ip + 4);
        if (plen != 0) {
            if (off + 40 + plen > f.size()) return FrameOutcome::Truncated;
            end = off + 40 + plen;
        }
        proto = ip[6];
        out.src.v6 = out.dst.v6 = true;
        std::copy_n(ip + 8, 16, out.src.bytes.begin());
        std::copy_n(ip + 24, 16, out.dst.bytes.begin());
        l4 = off + 40;
        for (;;) {
            if (proto == 0 || proto == 43 || proto == 60) {
                if (end < l4 + 8) return FrameOutcome::Truncated;
                proto = f[l4];
                l4 += (static_cast<std::size_t>(f[l4 + 1]) + 1) * 8;
            } else if (proto == 44) {
                if (end < l4 + 8) return FrameOutcome::Truncated;
                later_fragment = (be16(&f[l4 + 2]) & 0xFFF8) != 0;
                proto = f[l4];
                l4 += 8;
            } else if (proto == 51) {
                if (end < l4 + 8) return FrameOutcome::Truncated;
                proto = f[l4];
                l4 += (static_cast<std::size_t>(f[l4 + 1]) + 2) * 4;
            } else {
                break;
            }
            if (l4 > end) return FrameOutcome::Truncated;
        }
    } else {
        return FrameOutcome::NonIp;
    }

    if (proto != 6 && proto != 17) return FrameOutcome::NonTransport;
    out.transport = proto == 6 ? Transport::TCP : Transport::UDP;
    std::size_t data = l4;
    if (later_fragment) {
        // No transport header here; the fragment body is its own unit.
        out.src_port = out.dst_port = 0;
    } else if (proto == 6) {
        if (end < l4 + 20) return FrameOutcome::Truncated;
        out.src_port = be16(&f[l4]);
        out.dst_port = be16(&f[l4 + 2]);
        const std::size_t doff = static_cast<std::size_t>(f[l4 + 12] >> 4) * 4;
        if (doff < 20 || end < l4 + doff) return FrameOutcome::Truncated;
        data = l4 + doff;
    } else {
        if (end < l4 + 8) return FrameOutcome::Truncated;
        out.src_port = be16(&f[l4]);
        out.dst_port = be16(&f[l4 + 2]);
        const std::size_t ulen = be16(&f[l4 + 4]);
        if (ulen != 0) {  // 0 marks an oversized datagram
            if (ulen < 8 || l4 + ulen > end) return FrameOutcome::Truncated;
            end = l4 + ulen;
        }
        data = l4 + 8;
    }
    if (data >= end) return FrameOutcome::Empty;
    out.payload = ByteStream::from_bytes(f.subspan(data, end - data));
    return FrameOutcome::Emitted;
}

} // namespace detail

[[nodiscard]] inline ParsedCapture parse_capture(std::span<const std::uint8_t> file) {
    if (file.size() < 4) throw UnsupportedCaptureFormat("capture: file too short to hold a magic number");
    ParsedCapture out;
    const std::uint32_t raw_magic = detail::le32(file.data());
    if (raw_magic == kPcapMagicMicro || raw_magic == kPcapMagicNano) out.swapped = false;
    else if (detail::bswap32(raw_magic) == kPcapMagicMicro || detail::bswap32(raw_magic) == kPcapMagicNano) out.swapped = true;
    else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "capture: unsupported magic 0x%08X (classic pcap only)", raw_magic);
        throw UnsupportedCaptureFormat(buf);
    }
    auto u32 = [&](std::size_t off) {
        const auto v = detail::le32(&file[off]);
        return out.swapped ? detail::bswap32(v) : v;
    };
    out.nanosecond = u32(0) == kPcapMagicNano;
    if (file.size() < 24) throw CaptureParseError(file.size(), "truncated global header");
    out.snaplen = u32(16);
    const std::uint32_t linktype = u32(20) & 0x0FFFFFFF;
    if (linktype != kLinkTypeEthernet)
        throw UnsupportedCaptureFormat("capture: link type " + std::to_string(linktype) + " is not Ethernet");

    std::size_t off = 24;
    for (std::size_t index = 0; off < file.size(); ++index) {
        if (file.size() - off < 16) throw CaptureParseError(off, "truncated record header");
        CapturedPayload p;
        p.packet_index = index;
        p.ts_sec = u32(off);
        p.ts_frac = u32(off + 4);
        p.nanosecond = out.nanosecond;
        const std::size_t incl = u32(off + 8);
        off += 16;
        ++out.stats.records;
        if (incl > file.size() - off) {  // capture cut short mid-packet
            ++out.stats.skipped_truncated;
            break;
        }
        switch (detail::parse_frame(file.subspan(off, incl), p)) {
            case detail::FrameOutcome::Emitted:
                ++out.stats.emitted;
                out.payloads.push_back(std::move(p));
                break;
            case detail::FrameOutcome::NonIp: ++out.stats.skipped_non_ip; break;
            case detail::FrameOutcome::NonTransport: ++out.stats.skipped_non_transport; break;
            case detail::FrameOutcome::Truncated: ++out.stats.skipped_truncated; break;
            case detail::FrameOutcome::Empty: ++out.stats.skipped_empty; break;
        }
        off += incl;
    }
    return out;
}

[[nodiscard]] inline ParsedCapture parse_capture(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw CaptureError("cannot open capture " + path.string());
    const Bytes data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_capture(data);
}

// ---------------------------------------------------------------------------
// Writer, used for fixtures and synthetic captures.

struct CaptureWriteOptions {
    bool nanosecond = false;
    bool big_endian = false;
    std::uint32_t snaplen = 262144;
};

namespace detail {

inline void put_be16(Bytes& b, std::size_t v) {
    b.push_back(static_cast<std::uint8_t>(v >> 8));
    b.push_back(static_cast<std::uint8_t>(v));
}

inline std::uint16_t ipv4_checksum(std::span<const std::uint8_t> header) {
    std::uint32_t sum = 0;
    for (std::size_t i = 0; i + 1 < header.size(); i += 2) sum += be16(&header[i]);
    while (sum >> 16) sum = (sum & 0xFFFF) + (sum >> 16);
    return static_cast<std::uint16_t>(~sum);
}

} // namespace detail

/// Ethernet frame carrying the payload; lengths that overflow 16 bits are written
/// as 0, the convention of offloaded captures.
[[nodiscard]] inline Bytes build_frame(const CapturedPayload& p) {
    const auto& body = p.payload.bytes();
    Bytes l4;
    detail::put_be16(l4, p.src_port);
    detail::put_be16(l4, p.dst_port);
    if (p.transport == Transport::TCP) {
        detail::put_be16(l4, 0);
        detail::put_be16(l4, 1);  // seq
        detail::put_be16(l4, 0);
        detail::put_be16(l4, 0);  // ack
        l4.push_back(0x50);
        l4.push_back(0x18);  // PSH|ACK
        detail::put_be16(l4, 65535);
        detail::put_be16(l4, 0);
        detail::put_be16(l4, 0);
    } else {
        const std::size_t ulen = body.size() + 8;
        detail::put_be16(l4, ulen > 0xFFFF ? 0 : ulen);
        detail::put_be16(l4, 0);
    }
    l4.insert(l4.end(), body.begin(), body.end());

    Bytes f{0x02, 0x00, 0x00, 0x00, 0x00, 0x02, 0x02, 0x00, 0x00, 0x00, 0x00, 0x01};
    const std::uint8_t proto = p.transport == Transport::TCP ? 6 : 17;
    if (!p.src.v6) {
        detail::put_be16(f, 0x0800);
        Bytes ip{0x45, 0x00};
        const std::size_t total = 20 + l4.size();
        detail::put_be16(ip, total > 0xFFFF ? 0 : total);
        detail::put_be16(ip, p.packet_index & 0xFFFF);
        detail::put_be16(ip, 0x4000);  // DF
        ip.push_back(64);
        ip.push_back(proto);
        detail::put_be16(ip, 0);
        ip.insert(ip.end(), p.src.bytes.begin(), p.src.bytes.begin() + 4);
        ip.insert(ip.end(), p.dst.bytes.begin(), p.dst.bytes.begin() + 4);
        const auto sum = detail::ipv4_checksum(ip);
        ip[10] = static_cast<std::uint8_t>(sum >> 8);
        ip[11] = static_cast<std::uint8_t>(sum);
        f.insert(f.end(), ip.begin(), ip.end());
    } else {
        detail::put_be16(f, 0x86DD);
        f.insert(f.end(), {0x60, 0, 0, 0});
        detail::put_be16(f, l4.size() > 0xFFFF ? 0 : l4.size());
        f.push_back(proto);
        f.push_back(64);
        f.insert(f.end(), p.src.bytes.begin(), p.src.bytes.end());
        f.insert(f.end(), p.dst.bytes.begin(), p.dst.bytes.end());
    }
    f.insert(f.end(), l4.begin(), l4.end());
    return f;
}

/// Classic pcap file: global header plus one record per frame.
class CaptureWriter {
public:
    explicit CaptureWriter(CaptureWriteOptions opt = {}) : opt_(opt) {
        put32(opt_.nanosecond ? kPcapMagicNano : kPcapMagicMicro);
        put16(2);
        put16(4);
        put32(0);
        put32(0);
        put32(opt_.snaplen);
        put32(kLinkTypeEthernet);
    }

    void add_frame(std::span<const std::uint8_t> frame, std::uint32_t ts_sec, std::uint32_t ts_frac,
                   std::optional<std::uint32_t> orig_len = std::nullopt) {
        put32(ts_sec);
        put32(ts_frac);
        put32(static_cast<std::uint32_t>(frame.size()));
        put32(orig_len.value_or(static_cast<std::uint32_t>(frame.size())));
        data_.insert(data_.end(), frame.begin(), frame.end());
    }

    void add(const CapturedPayload& p) { add_frame(build_frame(p), p.ts_sec, p.ts_frac); }

    [[nodiscard]] const Bytes& bytes() const noexcept { return data_; }

    void save(const std::filesystem::path& path) const {
        std::ofstream f(path, std::ios::binary);
        f.write(reinterpret_cast<const char*>(data_.data()), static_cast<std::streamsize>(data_.size()));
        if (!f) throw CaptureError("cannot write capture " + path.string());
    }

private:
    void put16(std::uint16_t v) {
        if (opt_.big_endian) detail::put_be16(data_, v);
        else detail::put_le16(data_, v);
    }
    void put32(std::uint32_t v) {
        if (opt_.big_endian) {
            put16(static_cast<std::uint16_t>(v >> 16));
            put16(static_cast<std::uint16_t>(v));
        } else {
            detail::put_le32(data_, v);
        }
    }

    CaptureWriteOptions opt_;
    Bytes data_;
};

[[nodiscard]] inline Bytes write_capture(std::span<const CapturedPayload> payloads, CaptureWriteOptions opt = {}) {
    CaptureWriter w(opt);
    for (const auto& p : payloads) w.add(p);
    return w.bytes();
}

// ---------------------------------------------------------------------------
// Sampling and classification

/// Keeps each payload of at least `min_bytes` with the given probability. The
/// decision hashes (seed, packet_index) only, never the content.
[[nodiscard]] inline std::vector<CapturedPayload> sample_payloads(std::span<const CapturedPayload> payloads,
                                                                  double probability, std::size_t min_bytes,
                                                                  std::uint64_t seed) {
    if (!(probability >= 0.0 && probability <= 1.0))
        throw std::invalid_argument("sample_payloads: probability must lie in [0, 1]");
    std::vector<CapturedPayload> out;
    for (const auto& p : payloads) {
        if (p.payload.length_bytes() < min_bytes) continue;
        if (unit_interval(derive_seed(seed, p.packet_index)) < probability) out.push_back(p);
    }
    return out;
}

struct PacketVerdict {
    CapturedPayload packet;
    Verdict verdict;
};

struct CaptureClassification {
    std::vector<PacketVerdict> verdicts;  // packet order
    CaptureStats parse;
    std::size_t sampled = 0;
    std::size_t below_floor = 0;  // sampled but too short for the tests
    std::size_t encrypted = 0;
    std::size_t compressed = 0;
    std::vector<std::string> warnings;
};

struct CaptureOptions {
    double probability = 1.0;
    std::size_t min_bytes = kMinReportBytes;
    std::uint64_t seed = 0;
    std::size_t workers = 0;
};

[[nodiscard]] inline CaptureClassification classify_payloads(std::span<const CapturedPayload> payloads,
                                                             const ThresholdModel& model, const TestConfig& cfg,
                                                             const CaptureOptions& opt) {
    model.validate();
    cfg.validate();
    CaptureClassification out;
    if (opt.min_bytes < kMinReportBytes)
        out.warnings.push_back("min_bytes " + std::to_string(opt.min_bytes) +
                               " is below the 1024-byte floor; sub-1 KB verdicts are an unsupported regime");
    const auto sampled = sample_payloads(payloads, opt.probability, opt.min_bytes, opt.seed);
    out.sampled = sampled.size();
    const auto verdicts = parallel_map(sampled.size(), opt.workers, [&](std::size_t i) -> std::optional<Verdict> {
        try {
            return classify_stream_unchecked(sampled[i].payload, model, cfg);
        } catch (const std::invalid_argument&) {
            return std::nullopt;  // shorter than a test's minimum
        }
    });
    for (std::size_t i = 0; i < sampled.size(); ++i) {
        if (!verdicts[i]) {
            ++out.below_floor;
            continue;
        }
        ++(verdicts[i]->label == Label::Encrypted ? out.encrypted : out.compressed);
        out.verdicts.push_back({sampled[i], *verdicts[i]});
    }
    return out;
}

[[nodiscard]] inline CaptureClassification classify_capture(const std::filesystem::path& file,
                                                            const ThresholdModel& model, const TestConfig& cfg,
                                                            const CaptureOptions& opt) {
    const auto parsed = parse_capture(file);
    auto out = classify_payloads(parsed.payloads, model, cfg, opt);
    out.parse = parsed.stats;
    return out;
}

inline constexpr std::string_view kVerdictColumns =
    "packet_index,timestamp,transport,src,src_port,dst,dst_port,payload_bytes,label,failed_check,checks_evaluated";

/// One verdict as a row of kVerdictColumns, joined by `sep`.
[[nodiscard]] inline std::string format_verdict(const PacketVerdict& v, char sep = ',') {
    const auto& p = v.packet;
    std::string s;
    auto field = [&](const std::string& x) {
        if (!s.empty()) s += sep;
        s += x;
    };
    field(std::to_string(p.packet_index));
    field(p.timestamp());
    field(std::string(to_string(p.transport)));
    field(p.src.str());
    field(std::to_string(p.src_port));
    field(p.dst.str());
    field(std::to_string(p.dst_port));
    field(std::to_string(p.payload.length_bytes()));
    field(std::string(to_string(v.verdict.label)));
    field(v.verdict.failed_check ? std::string(to_string(*v.verdict.failed_check)) : std::string("-"));
    field(std::to_string(v.verdict.checks_evaluated));
    return s;
}

} // namespace hedge

#endif // HEDGE_CAPTURE_HPP
