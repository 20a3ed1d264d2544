// hedge - encrypted vs. compressed payload classification
// Byte- and bit-level views over a payload.

#ifndef HEDGE_BITSTREAM_HPP
#define HEDGE_BITSTREAM_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace hedge {

using ByteHistogram = std::array<std::uint64_t, 256>;

/// Immutable payload under analysis. Copies share the underlying buffer.
class ByteStream {
public:
    ByteStream() : data_(std::make_shared<const std::vector<std::uint8_t>>()) {}

    static ByteStream from_bytes(std::vector<std::uint8_t> data) {
        return ByteStream(std::make_shared<const std::vector<std::uint8_t>>(std::move(data)));
    }

    static ByteStream from_bytes(std::span<const std::uint8_t> data) {
        return from_bytes(std::vector<std::uint8_t>(data.begin(), data.end()));
    }

    [[nodiscard]] std::span<const std::uint8_t> bytes() const noexcept { return *data_; }
    [[nodiscard]] std::size_t length_bytes() const noexcept { return data_->size(); }
    /// Stream length in bits.
    [[nodiscard]] std::size_t length_bits() const noexcept { return data_->size() * 8; }
    [[nodiscard]] bool empty() const noexcept { return data_->empty(); }

    /// Bit at position i, most-significant bit of each byte first.
    [[nodiscard]] bool bit(std::size_t i) const noexcept {
        return ((*data_)[i >> 3] >> (7 - (i & 7))) & 1u;
    }

    friend bool operator==(const ByteStream& a, const ByteStream& b) {
        return a.data_ == b.data_ || *a.data_ == *b.data_;
    }

private:
    explicit ByteStream(std::shared_ptr<const std::vector<std::uint8_t>> data)
        : data_(std::move(data)) {}

    std::shared_ptr<const std::vector<std::uint8_t>> data_;
};

[[nodiscard]] inline ByteHistogram byte_histogram(std::span<const std::uint8_t> data) noexcept {
    ByteHistogram counts{};
    for (auto b : data) ++counts[b];
    return counts;
}

[[nodiscard]] inline ByteHistogram byte_histogram(const ByteStream& s) noexcept {
    return byte_histogram(s.bytes());
}

/// Random-access view of a contiguous run of bits inside a byte buffer.
class BitView {
public:
    class iterator {
    public:
        using iterator_category = std::random_access_iterator_tag;
        using value_type = bool;
        using difference_type = std::ptrdiff_t;
        using reference = bool;
        using pointer = void;

        iterator() = default;
        iterator(const BitView* view, std::size_t pos) : view_(view), pos_(pos) {}

        bool operator*() const { return (*view_)[pos_]; }
        bool operator[](difference_type d) const { return (*view_)[pos_ + d]; }
        iterator& operator++() { ++pos_; return *this; }
        iterator operator++(int) { auto t = *this; ++pos_; return t; }
        iterator& operator--() { --pos_; return *this; }
        iterator operator--(int) { auto t = *this; --pos_; return t; }
        iterator& operator+=(difference_type d) { pos_ += d; return *this; }
        iterator& operator-=(difference_type d) { pos_ -= d; return *this; }
        friend iterator operator+(iterator it, difference_type d) { return it += d; }
        friend iterator operator+(difference_type d, iterator it) { return it += d; }
        friend iterator operator-(iterator it, difference_type d) { return it -= d; }
        friend difference_type operator-(const iterator& a, const iterator& b) {
            return static_cast<difference_type>(a.pos_) - static_cast<difference_type>(b.pos_);
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.pos_ == b.pos_; }
        friend auto operator<=>(const iterator& a, const iterator& b) { return a.pos_ <=> b.pos_; }

    private:
        const BitView* view_ = nullptr;
        std::size_t pos_ = 0;
    };

    BitView() = default;
    BitView(std::span<const std::uint8_t> bytes, std::size_t first_bit, std::size_t length)
        : bytes_(bytes), first_(first_bit), length_(length) {}
    explicit BitView(std::span<const std::uint8_t> bytes)
        : BitView(bytes, 0, bytes.size() * 8) {}

    [[nodiscard]] std::size_t size() const noexcept { return length_; }
    [[nodiscard]] bool empty() const noexcept { return length_ == 0; }

    [[nodiscard]] bool operator[](std::size_t i) const noexcept {
        const std::size_t p = first_ + i;
        return (bytes_[p >> 3] >> (7 - (p & 7))) & 1u;
    }

    [[nodiscard]] iterator begin() const { return {this, 0}; }
    [[nodiscard]] iterator end() const { return {this, length_}; }

    /// Number of one bits; byte-aligned views use popcount on whole bytes.
    [[nodiscard]] std::size_t count_ones() const noexcept;

    /// Sub-view of `count` bits starting at `offset` within this view.
    [[nodiscard]] BitView subview(std::size_t offset, std::size_t count) const noexcept {
        return BitView(bytes_, first_ + offset, count);
    }

    [[nodiscard]] bool byte_aligned() const noexcept { return (first_ & 7) == 0 && (length_ & 7) == 0; }
    /// Underlying bytes; only meaningful when byte_aligned().
    [[nodiscard]] std::span<const std::uint8_t> aligned_bytes() const noexcept {
        return bytes_.subspan(first_ >> 3, length_ >> 3);
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t first_ = 0;
    std::size_t length_ = 0;
};

inline std::size_t BitView::count_ones() const noexcept {
    std::size_t ones = 0;
    if (byte_aligned()) {
        for (auto b : aligned_bytes()) ones += static_cast<std::size_t>(__builtin_popcount(b));
        return ones;
    }
    for (std::size_t i = 0; i < length_; ++i) ones += (*this)[i];
    return ones;
}

/// All 8 * length_bytes bits of the stream, MSB first within each byte.
[[nodiscard]] inline BitView bits(const ByteStream& s) noexcept { return BitView(s.bytes()); }

/// floor(n / block_bits) consecutive full blocks; a trailing partial block is dropped.
[[nodiscard]] inline std::vector<BitView> split_blocks(const ByteStream& s, std::size_t block_bits) {
    if (block_bits == 0) throw std::invalid_argument("split_blocks: block_bits must be >= 1");
    const std::size_t n = s.length_bits();
    std::vector<BitView> blocks;
    blocks.reserve(n / block_bits);
    const BitView all = bits(s);
    for (std::size_t off = 0; off + block_bits <= n; off += block_bits)
        blocks.push_back(all.subview(off, block_bits));
    return blocks;
}

} // namespace hedge

#endif // HEDGE_BITSTREAM_HPP
