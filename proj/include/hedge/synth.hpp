// hedge - encrypted vs. compressed payload classification
// Synthetic raw files for the six benchmark categories, for building corpora
// without the third-party benchmark sets. Each generator reproduces the byte-level
// structure of its format: JFIF/JPEG images via libjpeg, PDF object streams with
// Flate and DCT content, English-like prose, MPEG-1 Layer III frames, raw I420 AVI
// video and x86-64 ELF executables.

#ifndef HEDGE_SYNTH_HPP
#define HEDGE_SYNTH_HPP

#include "hedge/filetype.hpp"
#include "hedge/transforms.hpp"

#include <jpeglib.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hedge::synth {

using Rng = std::mt19937_64;

namespace detail {

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline double real(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }
inline bool chance(Rng& rng, double p) { return real(rng) < p; }

inline void append(Bytes& out, std::string_view s) { out.insert(out.end(), s.begin(), s.end()); }

inline void put_le(Bytes& out, std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class BitWriter {
public:
    void put(std::uint32_t value, int width) {
        for (int i = width - 1; i >= 0; --i) {
            acc_ = static_cast<std::uint8_t>((acc_ << 1) | ((value >> i) & 1u));
            if (++fill_ == 8) {
                bytes_.push_back(acc_);
                acc_ = 0;
                fill_ = 0;
            }
        }
        bits_ += static_cast<std::size_t>(width);
    }
    [[nodiscard]] std::size_t bit_count() const noexcept { return bits_; }
    Bytes take() {
        while (fill_ != 0) put(0, 1);
        return std::move(bytes_);
    }

private:
    Bytes bytes_;
    std::uint8_t acc_ = 0;
    int fill_ = 0;
    std::size_t bits_ = 0;
};

// ---------------------------------------------------------------------------
// Prose

inline constexpr std::array<std::string_view, 192> kCommonWords{
    "the",    "of",      "and",     "to",     "a",       "in",     "that",    "he",      "was",     "it",
    "his",    "is",      "with",    "as",     "i",       "had",    "for",     "at",      "by",      "on",
    "not",    "be",      "from",    "but",    "you",     "or",     "her",     "him",     "which",   "she",
    "all",    "they",    "were",    "my",     "are",     "have",   "so",      "this",    "one",     "there",
    "me",     "an",      "their",   "we",     "no",      "when",   "been",    "said",    "who",     "would",
    "what",   "them",    "if",      "will",   "out",     "more",   "then",    "into",    "up",      "could",
    "some",   "man",     "very",    "time",   "upon",    "now",    "only",    "like",    "other",   "than",
    "little", "any",     "great",   "made",   "may",     "do",     "our",     "its",     "about",   "before",
    "these",  "such",    "can",     "should", "over",    "men",    "see",     "two",     "much",    "first",
    "must",   "your",    "down",    "well",   "good",    "us",     "did",     "know",    "how",     "after",
    "come",   "went",    "old",     "day",    "might",   "own",    "way",     "never",   "long",    "came",
    "here",   "through", "again",   "most",   "life",    "where",  "those",   "every",   "even",    "without",
    "while",  "house",   "eyes",    "hand",   "himself", "nothing", "being",  "still",   "found",   "thought",
    "away",   "last",    "once",    "under",  "night",   "say",    "heart",   "same",    "place",   "take",
    "many",   "mind",    "back",    "world",  "left",    "head",   "light",   "against", "always",  "whom",
    "three",  "young",   "face",    "love",   "let",     "right",  "almost",  "find",    "another", "father",
    "each",   "shall",   "part",    "seemed", "both",    "king",   "people",  "told",    "mother",  "morning",
    "work",   "between", "year",    "water",  "friend",  "half",   "often",   "poor",    "whole",   "door",
    "round",  "table",   "going",   "saw",    "among",   "felt",   "looked",  "himself", "large",   "words",
    "country", "side"};

inline constexpr std::array<std::string_view, 24> kOnsets{"b", "c",  "d",  "f",  "g",  "h",  "l",  "m",
                                                          "n", "p",  "r",  "s",  "t",  "v",  "w",  "br",
                                                          "ch", "cl", "gr", "pr", "sh", "st", "th", "tr"};
inline constexpr std::array<std::string_view, 12> kVowels{"a", "e", "i", "o", "u", "ea", "ou", "ai", "ee", "ie", "oa", "y"};
inline constexpr std::array<std::string_view, 16> kCodas{"", "", "", "n", "r", "s", "t", "l", "nd", "ng", "st", "rt", "ck", "ll", "ss", "nt"};
inline constexpr std::array<std::string_view, 8> kSuffixes{"", "", "", "ed", "ing", "ly", "ness", "s"};

class Vocabulary {
public:
    explicit Vocabulary(Rng& rng, std::size_t size = 6000) {
        words_.assign(kCommonWords.begin(), kCommonWords.end());
        while (words_.size() < size) {
            std::string w;
            const int syllables = uniform(rng, 1, 4);
            for (int s = 0; s < syllables; ++s) {
                w += kOnsets[static_cast<std::size_t>(uniform(rng, 0, kOnsets.size() - 1))];
                w += kVowels[static_cast<std::size_t>(uniform(rng, 0, kVowels.size() - 1))];
                w += kCodas[static_cast<std::size_t>(uniform(rng, 0, kCodas.size() - 1))];
            }
            w += kSuffixes[static_cast<std::size_t>(uniform(rng, 0, kSuffixes.size() - 1))];
            words_.push_back(std::move(w));
        }
        cdf_.resize(words_.size());
        double acc = 0.0;
        for (std::size_t r = 0; r < words_.size(); ++r) {
            acc += 1.0 / std::pow(static_cast<double>(r + 1), 1.07);
            cdf_[r] = acc;
        }
        for (auto& c : cdf_) c /= acc;
    }

    const std::string& sample(Rng& rng) const {
        const double u = real(rng);
        const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        return words_[std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), words_.size() - 1)];
    }

private:
    std::vector<std::string> words_;
    std::vector<double> cdf_;
};

inline std::string sentence(Rng& rng, const Vocabulary& vocab) {
    std::string s;
    const int words = uniform(rng, 4, 28);
    const bool dialog = chance(rng, 0.12);
    if (dialog) s += '"';
    for (int i = 0; i < words; ++i) {
        std::string w = vocab.sample(rng);
        if (i == 0 || (w == "i")) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
        else if (chance(rng, 0.03)) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
        s += w;
        if (i + 1 < words) {
            if (chance(rng, 0.08)) s += ',';
            else if (chance(rng, 0.01)) s += ';';
            s += ' ';
        }
    }
    const double end = real(rng);
    s += end < 0.86 ? '.' : (end < 0.94 ? '?' : '!');
    if (dialog) s += '"';
    return s;
}

inline std::string to_roman(int v) {
    static constexpr std::array<std::pair<int, std::string_view>, 9> table{
        {{50, "L"}, {40, "XL"}, {10, "X"}, {9, "IX"}, {5, "V"}, {4, "IV"}, {1, "I"}, {0, ""}, {0, ""}}};
    std::string out;
    for (const auto& [n, s] : table) {
        if (n == 0) break;
        while (v >= n) {
            out += s;
            v -= n;
        }
    }
    return out;
}

// Greedy word wrap at `width` columns with CRLF line ends.
inline void wrap_paragraph(std::string& out, const std::string& text, std::size_t width = 70) {
    std::size_t line_start = out.size();
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto next = text.find(' ', pos);
        if (next == std::string::npos) next = text.size();
        const std::string_view word(text.data() + pos, next - pos);
        if (out.size() - line_start + word.size() + 1 > width && out.size() > line_start) {
            out += "\r\n";
            line_start = out.size();
        } else if (out.size() > line_start) {
            out += ' ';
        }
        out += word;
        pos = next + 1;
    }
    out += "\r\n\r\n";
}

inline std::string prose(Rng& rng, std::size_t target_bytes) {
    Vocabulary vocab(rng);
    std::string out;
    out.reserve(target_bytes + 4096);
    int chapter = 1;
    out += "The Project Gutenberg eBook\r\n\r\n";
    while (out.size() < target_bytes) {
        if (chance(rng, 0.04)) {
            out += "CHAPTER " + to_roman(chapter++) + ".\r\n\r\n";
        }
        std::string paragraph;
        const int sentences = uniform(rng, 1, 8);
        for (int i = 0; i < sentences; ++i) {
            if (i) paragraph += ' ';
            paragraph += sentence(rng, vocab);
        }
        wrap_paragraph(out, paragraph);
    }
    out.resize(target_bytes);
    return out;
}

// ---------------------------------------------------------------------------
// Images

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;
};

// Smooth random field in [0,1): bilinear interpolation of a coarse random grid.
class ValueNoise {
public:
    ValueNoise(Rng& rng, int width, int height, int cell) : cell_(cell) {
        gw_ = width / cell + 2;
        gh_ = height / cell + 2;
        grid_.resize(static_cast<std::size_t>(gw_ * gh_));
        for (auto& g : grid_) g = real(rng);
    }
    double at(int x, int y) const {
        const double fx = static_cast<double>(x) / cell_;
        const double fy = static_cast<double>(y) / cell_;
        const int ix = static_cast<int>(fx);
        const int iy = static_cast<int>(fy);
        const double tx = fx - ix;
        const double ty = fy - iy;
        const double sx = tx * tx * (3 - 2 * tx);
        const double sy = ty * ty * (3 - 2 * ty);
        auto g = [&](int i, int j) { return grid_[static_cast<std::size_t>(j * gw_ + i)]; };
        const double top = g(ix, iy) + sx * (g(ix + 1, iy) - g(ix, iy));
        const double bottom = g(ix, iy + 1) + sx * (g(ix + 1, iy + 1) - g(ix, iy + 1));
        return top + sy * (bottom - top);
    }

private:
    int cell_;
    int gw_ = 0;
    int gh_ = 0;
    std::vector<double> grid_;
};

struct Shape {
    bool ellipse = false;
    double cx = 0, cy = 0, rx = 0, ry = 0;
    std::array<double, 3> color{};
    double vx = 0, vy = 0;
};

inline std::vector<Shape> random_shapes(Rng& rng, int width, int height, int count) {
    std::vector<Shape> shapes(static_cast<std::size_t>(count));
    for (auto& s : shapes) {
        s.ellipse = chance(rng, 0.5);
        s.cx = real(rng) * width;
        s.cy = real(rng) * height;
        s.rx = 8 + real(rng) * width / 6.0;
        s.ry = 8 + real(rng) * height / 6.0;
        for (auto& c : s.color) c = 20 + real(rng) * 215;
        s.vx = (real(rng) - 0.5) * 6;
        s.vy = (real(rng) - 0.5) * 4;
    }
    return shapes;
}

// Natural-looking scene: multi-octave colour noise, a lighting gradient, flat
// objects and Gaussian sensor noise.
inline Image render_scene(Rng& rng, int width, int height, const std::vector<Shape>& shapes, double noise_sigma,
                          std::uint64_t field_seed) {
    Rng field(field_seed);
    std::array<std::array<ValueNoise, 3>, 3> octaves{{
        {ValueNoise(field, width, height, 96), ValueNoise(field, width, height, 96), ValueNoise(field, width, height, 96)},
        {ValueNoise(field, width, height, 24), ValueNoise(field, width, height, 24), ValueNoise(field, width, height, 24)},
        {ValueNoise(field, width, height, 6), ValueNoise(field, width, height, 6), ValueNoise(field, width, height, 6)},
    }};
    std::normal_distribution<double> noise(0.0, noise_sigma);
    Image img{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width * height * 3))};
    for (int y = 0; y < height; ++y) {
        const double light = 0.75 + 0.35 * static_cast<double>(y) / height;
        for (int x = 0; x < width; ++x) {
            std::array<double, 3> c{};
            for (int ch = 0; ch < 3; ++ch)
                c[ch] = 255.0 * (0.6 * octaves[0][ch].at(x, y) + 0.3 * octaves[1][ch].at(x, y) +
                                 0.1 * octaves[2][ch].at(x, y)) * light;
            for (const auto& s : shapes) {
                const double dx = (x - s.cx) / s.rx;
                const double dy = (y - s.cy) / s.ry;
                const bool inside = s.ellipse ? dx * dx + dy * dy <= 1.0 : std::fabs(dx) <= 1.0 && std::fabs(dy) <= 1.0;
                if (inside) {
                    const double shade = 0.85 + 0.15 * octaves[1][0].at(x, y);
                    for (int ch = 0; ch < 3; ++ch) c[ch] = s.color[ch] * shade;
                }
            }
            auto* px = &img.rgb[static_cast<std::size_t>((y * width + x) * 3)];
            for (int ch = 0; ch < 3; ++ch)
                px[ch] = static_cast<std::uint8_t>(std::clamp(c[ch] + noise(rng), 0.0, 255.0));
        }
    }
    return img;
}

inline Bytes encode_jpeg(const Image& img, int quality) {
    jpeg_compress_struct cinfo{};
    jpeg_error_mgr jerr{};
    cinfo.err = jpeg_std_error(&jerr);
    jerr.error_exit = [](j_common_ptr) { throw std::runtime_error("libjpeg: compression failed"); };
    jpeg_create_compress(&cinfo);
    unsigned char* buffer = nullptr;
    unsigned long size = 0;
    jpeg_mem_dest(&cinfo, &buffer, &size);
    cinfo.image_width = static_cast<JDIMENSION>(img.width);
    cinfo.image_height = static_cast<JDIMENSION>(img.height);
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    while (cinfo.next_scanline < cinfo.image_height) {
        auto* row = const_cast<JSAMPLE*>(&img.rgb[static_cast<std::size_t>(cinfo.next_scanline) * img.width * 3]);
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    Bytes out(buffer, buffer + size);
    jpeg_destroy_compress(&cinfo);
    std::free(buffer);
    return out;
}

inline Bytes photo(Rng& rng, std::size_t target_bytes) {
    // Bytes per pixel depends on scene content, so size a trial frame and rescale once.
    const auto shape_count = uniform(rng, 6, 24);
    const double noise = 1.5 + real(rng) * 1.5;
    const int quality = uniform(rng, 85, 95);
    const std::uint64_t field_seed = rng();
    const std::uint64_t noise_seed = rng();
    double bytes_per_pixel = 0.5;
    Bytes jpeg;
    for (int attempt = 0; attempt < 2; ++attempt) {
        const double pixels = std::max(64.0 * 64.0, static_cast<double>(target_bytes) / bytes_per_pixel);
        const int width = std::max(64, static_cast<int>(std::sqrt(pixels * 4.0 / 3.0)) / 16 * 16);
        const int height = std::max(64, width * 3 / 4);
        Rng layout(field_seed);
        Rng sensor(noise_seed);
        const auto shapes = random_shapes(layout, width, height, shape_count);
        jpeg = encode_jpeg(render_scene(sensor, width, height, shapes, noise, field_seed), quality);
        bytes_per_pixel = static_cast<double>(jpeg.size()) / (static_cast<double>(width) * height);
    }
    return jpeg;
}

// ---------------------------------------------------------------------------
// PDF

inline Bytes pdf_document(Rng& rng, std::size_t target_bytes) {
    Bytes out;
    append(out, "%PDF-1.5\n%\xE2\xE3\xCF\xD3\n");
    std::vector<std::size_t> offsets;
    auto begin_object = [&](std::size_t id) {
        if (offsets.size() < id + 1) offsets.resize(id + 1, 0);
        offsets[id] = out.size();
        append(out, std::to_string(id) + " 0 obj\n");
    };
    auto stream_object = [&](std::size_t id, const std::string& dict, const Bytes& data) {
        begin_object(id);
        append(out, "<< " + dict + " /Length " + std::to_string(data.size()) + " >>\nstream\n");
        out.insert(out.end(), data.begin(), data.end());
        append(out, "\nendstream\nendobj\n");
    };

    // Embedded font program: glyph outlines are short signed coordinate deltas.
    Bytes font;
    const int glyphs = uniform(rng, 180, 400);
    for (int g = 0; g < glyphs; ++g) {
        const int points = uniform(rng, 12, 60);
        put_le(font, static_cast<std::uint64_t>(points), 2);
        for (int p = 0; p < points; ++p) {
            font.push_back(static_cast<std::uint8_t>(uniform(rng, 0, 3) == 0 ? 0x01 : 0x33));
            put_le(font, static_cast<std::uint64_t>(static_cast<std::int16_t>(uniform(rng, -90, 90))), 2);
            put_le(font, static_cast<std::uint64_t>(static_cast<std::int16_t>(uniform(rng, -90, 90))), 2);
        }
    }
    std::size_t next_id = 5;
    const std::size_t font_file = next_id++;
    stream_object(font_file, "/Filter /FlateDecode /Length1 " + std::to_string(font.size()),
                  hedge::detail::deflate_stream(font, 15, 6));

    std::vector<std::size_t> pages;
    std::string prose_text = prose(rng, 1 << 16);
    std::size_t prose_pos = 0;
    while (out.size() < target_bytes) {
        std::string content = "BT\n/F1 10 Tf\n12 TL\n72 740 Td\n";
        for (int line = 0; line < 56; ++line) {
            if (prose_pos + 90 > prose_text.size()) prose_pos = static_cast<std::size_t>(uniform(rng, 0, 4096));
            std::string text = prose_text.substr(prose_pos, 80);
            prose_pos += 80;
            std::replace(text.begin(), text.end(), '\r', ' ');
            std::replace(text.begin(), text.end(), '\n', ' ');
            std::string escaped;
            for (char c : text) {
                if (c == '(' || c == ')' || c == '\\') escaped += '\\';
                escaped += c;
            }
            content += "[(" + escaped + ")] TJ T*\n";
        }
        content += "ET\n";
        const bool with_figure = chance(rng, 0.6);
        if (with_figure) content += "q 300 0 0 200 150 80 cm /Im1 Do Q\n";
        const Bytes content_bytes(content.begin(), content.end());
        const std::size_t content_id = next_id++;
        // zlib stream (RFC 1950) as written by PDF producers
        stream_object(content_id, "/Filter /FlateDecode", hedge::detail::deflate_stream(content_bytes, 15, 6));

        std::string resources = "/Font << /F1 4 0 R >>";
        if (with_figure) {
            const auto shapes = random_shapes(rng, 320, 240, uniform(rng, 3, 10));
            const Image fig = render_scene(rng, 320, 240, shapes, 2.5, rng());
            const Bytes jpeg = encode_jpeg(fig, uniform(rng, 75, 92));
            const std::size_t image_id = next_id++;
            stream_object(image_id,
                          "/Type /XObject /Subtype /Image /Width 320 /Height 240 /ColorSpace /DeviceRGB "
                          "/BitsPerComponent 8 /Filter /DCTDecode",
                          jpeg);
            resources += " /XObject << /Im1 " + std::to_string(image_id) + " 0 R >>";
        }
        const std::size_t page_id = next_id++;
        begin_object(page_id);
        append(out, "<< /Type /Page /Parent 2 0 R /MediaBox [0 0 612 792] /Contents " + std::to_string(content_id) +
                        " 0 R /Resources << " + resources + " >> >>\nendobj\n");
        pages.push_back(page_id);
    }

    begin_object(1);
    append(out, "<< /Type /Catalog /Pages 2 0 R >>\nendobj\n");
    begin_object(2);
    std::string kids;
    for (auto p : pages) kids += std::to_string(p) + " 0 R ";
    append(out, "<< /Type /Pages /Kids [" + kids + "] /Count " + std::to_string(pages.size()) + " >>\nendobj\n");
    begin_object(3);
    append(out, "<< /Type /FontDescriptor /FontName /AAAAAA+Times /Flags 34 /FontBBox [-168 -218 1000 898] "
                "/ItalicAngle 0 /Ascent 683 /Descent -217 /CapHeight 662 /StemV 84 /FontFile2 " +
                    std::to_string(font_file) + " 0 R >>\nendobj\n");
    begin_object(4);
    append(out, "<< /Type /Font /Subtype /TrueType /BaseFont /AAAAAA+Times /FirstChar 32 /LastChar 126 "
                "/FontDescriptor 3 0 R /Encoding /WinAnsiEncoding >>\nendobj\n");

    const std::size_t xref_at = out.size();
    append(out, "xref\n0 " + std::to_string(offsets.size()) + "\n0000000000 65535 f \n");
    for (std::size_t i = 1; i < offsets.size(); ++i) {
        char line[32];
        std::snprintf(line, sizeof line, "%010zu 00000 n \n", offsets[i]);
        append(out, line);
    }
    append(out, "trailer\n<< /Size " + std::to_string(offsets.size()) + " /Root 1 0 R >>\nstartxref\n" +
                    std::to_string(xref_at) + "\n%%EOF\n");
    return out;
}

// ---------------------------------------------------------------------------
// MPEG-1 Layer III audio: ID3v2 tag followed by 128 kbit/s, 44.1 kHz frames whose
// main data holds variable-length-coded spectral values.

inline void put_exp_golomb(BitWriter& bw, std::uint32_t v, int k) {
    const std::uint32_t value = v + (1u << k);
    int bits = 0;
    while ((value >> bits) > 1) ++bits;
    bw.put(0, bits - k);
    bw.put(value, bits + 1);
}

inline Bytes mp3_stream(Rng& rng, std::size_t target_bytes) {
    Bytes out;
    append(out, "ID3");
    out.push_back(3);
    out.push_back(0);
    out.push_back(0);
    Bytes tag;
    auto text_frame = [&](std::string_view id, std::string_view text) {
        append(tag, id);
        const auto len = static_cast<std::uint32_t>(text.size() + 1);
        for (int i = 3; i >= 0; --i) tag.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
        tag.push_back(0);
        tag.push_back(0);
        tag.push_back(0);
        append(tag, text);
    };
    text_frame("TIT2", "Symphony No. 9 in D minor, Op. 125");
    text_frame("TPE1", "Ludwig van Beethoven");
    text_frame("TALB", "Symphonies");
    text_frame("TRCK", std::to_string(uniform(rng, 1, 4)));
    tag.resize(tag.size() + 1024, 0);  // padding
    const auto tag_size = static_cast<std::uint32_t>(tag.size());
    for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>((tag_size >> (7 * i)) & 0x7F));
    out.insert(out.end(), tag.begin(), tag.end());

    // Slowly varying loudness per band drives the spectral magnitudes.
    std::array<double, 32> band_level{};
    for (auto& b : band_level) b = real(rng);
    double remainder = 0.0;
    while (out.size() < target_bytes) {
        remainder += 144.0 * 128000.0 / 44100.0;
        const int frame_bytes = static_cast<int>(remainder);
        remainder -= frame_bytes;
        const bool padded = frame_bytes == 418;
        out.push_back(0xFF);
        out.push_back(0xFB);
        out.push_back(static_cast<std::uint8_t>(0x90 | (padded ? 0x02 : 0x00)));
        out.push_back(0x64);  // joint stereo

        BitWriter side;
        side.put(static_cast<std::uint32_t>(uniform(rng, 0, 511)), 9);  // main_data_begin
        side.put(0, 3);
        side.put(static_cast<std::uint32_t>(uniform(rng, 0, 255)), 8);  // scfsi
        BitWriter main;
        const std::size_t budget_bits = static_cast<std::size_t>(frame_bytes - 4 - 32) * 8;
        for (int gr = 0; gr < 2; ++gr) {
            for (int ch = 0; ch < 2; ++ch) {
                for (auto& b : band_level) b = std::clamp(b + (real(rng) - 0.5) * 0.2, 0.05, 1.0);
                const int big_values = uniform(rng, 140, 260);
                const int global_gain = uniform(rng, 140, 180);
                side.put(static_cast<std::uint32_t>(uniform(rng, 600, 1400)), 12);  // part2_3_length
                side.put(static_cast<std::uint32_t>(big_values), 9);
                side.put(static_cast<std::uint32_t>(global_gain), 8);
                side.put(static_cast<std::uint32_t>(uniform(rng, 0, 15)), 4);
                side.put(0, 1);
                side.put(static_cast<std::uint32_t>(uniform(rng, 1, 31)), 5);
                side.put(static_cast<std::uint32_t>(uniform(rng, 1, 31)), 5);
                side.put(static_cast<std::uint32_t>(uniform(rng, 1, 31)), 5);
                side.put(static_cast<std::uint32_t>(uniform(rng, 0, 15)), 4);
                side.put(static_cast<std::uint32_t>(uniform(rng, 0, 7)), 3);
                side.put(static_cast<std::uint32_t>(uniform(rng, 0, 7)), 3);
                // scale factors
                for (int sf = 0; sf < 21; ++sf) main.put(static_cast<std::uint32_t>(uniform(rng, 0, 15)), 4);
                // big_values region: pairs of magnitudes, decaying with frequency
                for (int i = 0; i < big_values * 2; ++i) {
                    const double level = band_level[static_cast<std::size_t>(i * 32 / 576)] *
                                         std::exp(-static_cast<double>(i) / 260.0) * 9.0;
                    const std::uint32_t mag = static_cast<std::uint32_t>(
                        std::geometric_distribution<int>(1.0 / (1.0 + level))(rng));
                    put_exp_golomb(main, mag, level > 3.0 ? 1 : 0);
                    if (mag) main.put(static_cast<std::uint32_t>(rng() & 1u), 1);
                }
                // count1 region: quadruples of 0/1 values
                const int quads = uniform(rng, 10, 40);
                for (int q = 0; q < quads; ++q) {
                    for (int v = 0; v < 4; ++v) {
                        const bool one = chance(rng, 0.3);
                        main.put(one ? 1u : 0u, 1);
                        if (one) main.put(static_cast<std::uint32_t>(rng() & 1u), 1);
                    }
                }
            }
        }
        side.put(0, 32 * 8 - static_cast<int>(side.bit_count()));
        Bytes side_bytes = side.take();
        side_bytes.resize(32);
        out.insert(out.end(), side_bytes.begin(), side_bytes.end());
        Bytes main_bytes = main.take();
        // Bit reservoir: overflow spills into the next frame, underflow is ancillary zero fill.
        main_bytes.resize(budget_bits / 8, 0);
        out.insert(out.end(), main_bytes.begin(), main_bytes.end());
    }
    out.resize(target_bytes);
    return out;
}

// ---------------------------------------------------------------------------
// Raw video: RIFF/AVI container with uncompressed I420 frames of a moving scene.

inline Bytes avi_video(Rng& rng, std::size_t target_bytes) {
    constexpr int width = 320;
    constexpr int height = 240;
    constexpr std::size_t frame_bytes = width * height * 3 / 2;
    const std::size_t frames = std::max<std::size_t>(1, target_bytes / (frame_bytes + 8));
    auto shapes = random_shapes(rng, width, height, uniform(rng, 3, 8));
    const std::uint64_t background_seed = rng();

    Bytes movi;
    std::vector<std::uint32_t> index_offsets;
    for (std::size_t f = 0; f < frames; ++f) {
        for (auto& s : shapes) {
            s.cx += s.vx;
            s.cy += s.vy;
            if (s.cx < 0 || s.cx > width) s.vx = -s.vx;
            if (s.cy < 0 || s.cy > height) s.vy = -s.vy;
        }
        const Image img = render_scene(rng, width, height, shapes, 1.5, background_seed);
        index_offsets.push_back(static_cast<std::uint32_t>(movi.size() + 4));
        append(movi, "00dc");
        put_le(movi, frame_bytes, 4);
        const std::size_t y0 = movi.size();
        movi.resize(y0 + frame_bytes);
        std::uint8_t* yp = movi.data() + y0;
        std::uint8_t* up = yp + width * height;
        std::uint8_t* vp = up + width * height / 4;
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                const auto* px = &img.rgb[static_cast<std::size_t>((y * width + x) * 3)];
                const double r = px[0], g = px[1], b = px[2];
                yp[y * width + x] = static_cast<std::uint8_t>(std::clamp(16 + 0.257 * r + 0.504 * g + 0.098 * b, 0.0, 255.0));
                if ((x & 1) == 0 && (y & 1) == 0) {
                    const int ci = (y / 2) * (width / 2) + x / 2;
                    up[ci] = static_cast<std::uint8_t>(std::clamp(128 - 0.148 * r - 0.291 * g + 0.439 * b, 0.0, 255.0));
                    vp[ci] = static_cast<std::uint8_t>(std::clamp(128 + 0.439 * r - 0.368 * g - 0.071 * b, 0.0, 255.0));
                }
            }
        }
    }

    Bytes hdrl;
    append(hdrl, "avih");
    put_le(hdrl, 56, 4);
    put_le(hdrl, 33333, 4);                  // microseconds per frame
    put_le(hdrl, frame_bytes * 30, 4);       // max bytes per second
    put_le(hdrl, 0, 4);
    put_le(hdrl, 0x10, 4);                   // AVIF_HASINDEX
    put_le(hdrl, frames, 4);
    put_le(hdrl, 0, 4);
    put_le(hdrl, 1, 4);
    put_le(hdrl, frame_bytes, 4);
    put_le(hdrl, width, 4);
    put_le(hdrl, height, 4);
    put_le(hdrl, 0, 16);
    Bytes strl;
    append(strl, "strh");
    put_le(strl, 56, 4);
    append(strl, "vidsI420");
    put_le(strl, 0, 12);
    put_le(strl, 1, 4);
    put_le(strl, 30, 4);
    put_le(strl, 0, 4);
    put_le(strl, frames, 4);
    put_le(strl, frame_bytes, 4);
    put_le(strl, 0xFFFFFFFFu, 4);
    put_le(strl, 0, 4);
    put_le(strl, 0, 8);
    append(strl, "strf");
    put_le(strl, 40, 4);
    put_le(strl, 40, 4);
    put_le(strl, width, 4);
    put_le(strl, height, 4);
    put_le(strl, 1, 2);
    put_le(strl, 12, 2);
    append(strl, "I420");
    put_le(strl, frame_bytes, 4);
    put_le(strl, 0, 16);
    append(hdrl, "LIST");
    put_le(hdrl, strl.size() + 4, 4);
    append(hdrl, "strl");
    hdrl.insert(hdrl.end(), strl.begin(), strl.end());

    Bytes idx;
    for (auto off : index_offsets) {
        append(idx, "00dc");
        put_le(idx, 0x10, 4);
        put_le(idx, off, 4);
        put_le(idx, frame_bytes, 4);
    }

    Bytes out;
    append(out, "RIFF");
    put_le(out, 4 + 12 + hdrl.size() + 12 + movi.size() + 8 + idx.size(), 4);
    append(out, "AVI LIST");
    put_le(out, hdrl.size() + 4, 4);
    append(out, "hdrl");
    out.insert(out.end(), hdrl.begin(), hdrl.end());
    append(out, "LIST");
    put_le(out, movi.size() + 4, 4);
    append(out, "movi");
    out.insert(out.end(), movi.begin(), movi.end());
    append(out, "idx1");
    put_le(out, idx.size(), 4);
    out.insert(out.end(), idx.begin(), idx.end());
    return out;
}

// ---------------------------------------------------------------------------
// x86-64 ELF executable

// Small operands dominate compiled code: stack slots, struct offsets, loop bounds.
inline std::uint32_t small_operand(Rng& rng) {
    static constexpr std::array<std::uint32_t, 12> common{0, 1, 8, 2, 16, 4, 24, 32, 3, 0x10, 40, 0xff};
    if (chance(rng, 0.8)) return common[static_cast<std::size_t>(std::min(11.0, std::floor(-std::log(1.0 - real(rng)) * 3.0)))];
    return static_cast<std::uint32_t>(uniform(rng, 0, 4096));
}

// One non-branching instruction from a compiler-like mix.
inline void emit_instruction(Rng& rng, Bytes& text) {
    static constexpr std::array<std::uint8_t, 6> regs{0, 3, 6, 7, 1, 2};  // rax rbx rsi rdi rcx rdx
    auto reg = [&] { return regs[static_cast<std::size_t>(std::min(5, static_cast<int>(-std::log(1.0 - real(rng)) * 1.5)))]; };
    auto slot = [&] { return static_cast<std::uint8_t>(-8 * uniform(rng, 1, 6)); };
    const double u = real(rng);
    if (u < 0.22) {  // mov [rbp-d], reg / mov reg, [rbp-d]
        text.insert(text.end(), {0x48, static_cast<std::uint8_t>(chance(rng, 0.5) ? 0x89 : 0x8b),
                                 static_cast<std::uint8_t>(0x45 | reg() << 3), slot()});
    } else if (u < 0.38) {  // mov reg, reg
        text.insert(text.end(), {0x48, 0x89, static_cast<std::uint8_t>(0xc0 | reg() << 3 | reg())});
    } else if (u < 0.48) {  // mov reg, [reg+d8]
        text.insert(text.end(), {0x48, 0x8b, static_cast<std::uint8_t>(0x40 | reg() << 3 | reg()),
                                 static_cast<std::uint8_t>(small_operand(rng) & 0x78)});
    } else if (u < 0.56) {  // mov eax, imm32
        text.push_back(static_cast<std::uint8_t>(0xb8 + reg()));
        put_le(text, small_operand(rng), 4);
    } else if (u < 0.64) {  // test/cmp then short jcc
        if (chance(rng, 0.5)) text.insert(text.end(), {0x85, 0xc0});
        else text.insert(text.end(), {0x48, 0x83, static_cast<std::uint8_t>(0xf8 | reg()), static_cast<std::uint8_t>(small_operand(rng) & 0x7f)});
        text.insert(text.end(), {static_cast<std::uint8_t>(chance(rng, 0.6) ? 0x74 : 0x75), static_cast<std::uint8_t>(uniform(rng, 2, 40))});
    } else if (u < 0.70) {  // xor eax, eax
        text.insert(text.end(), {0x31, 0xc0});
    } else if (u < 0.76) {  // add/sub reg, imm8
        text.insert(text.end(), {0x48, 0x83, static_cast<std::uint8_t>((chance(rng, 0.5) ? 0xc0 : 0xe8) | reg()),
                                 static_cast<std::uint8_t>(small_operand(rng) & 0x7f)});
    } else if (u < 0.82) {  // movzx eax, byte [rdi+d]
        text.insert(text.end(), {0x0f, 0xb6, 0x47, static_cast<std::uint8_t>(small_operand(rng) & 0x3f)});
    } else if (u < 0.88) {  // push/pop callee-saved
        text.push_back(static_cast<std::uint8_t>((chance(rng, 0.5) ? 0x50 : 0x58) + reg()));
    } else if (u < 0.94) {  // mov dword [rsp+d], imm32
        text.insert(text.end(), {0xc7, 0x44, 0x24, static_cast<std::uint8_t>(small_operand(rng) & 0x3c)});
        put_le(text, small_operand(rng), 4);
    } else {  // lea rax, [rbx+rcx*8+d]
        text.insert(text.end(), {0x48, 0x8d, 0x44, 0xcb, static_cast<std::uint8_t>(small_operand(rng) & 0x78)});
    }
}

// Compilers emit the same short sequences over and over (argument setup, epilogues,
// bounds checks); functions are built mostly from a fixed pool of them.
struct CodeModel {
    std::vector<Bytes> idioms;
    std::vector<double> idiom_cdf;
    std::vector<std::size_t> functions;  // entry offsets within .text

    explicit CodeModel(Rng& rng, std::size_t pool = 400) {
        double acc = 0.0;
        for (std::size_t i = 0; i < pool; ++i) {
            Bytes seq;
            const int n = uniform(rng, 2, 7);
            for (int k = 0; k < n; ++k) emit_instruction(rng, seq);
            idioms.push_back(std::move(seq));
            acc += 1.0 / static_cast<double>(i + 1);
            idiom_cdf.push_back(acc);
        }
        for (auto& c : idiom_cdf) c /= acc;
    }

    const Bytes& idiom(Rng& rng) const {
        const auto it = std::lower_bound(idiom_cdf.begin(), idiom_cdf.end(), real(rng));
        return idioms[std::min<std::size_t>(static_cast<std::size_t>(it - idiom_cdf.begin()), idioms.size() - 1)];
    }
};

inline void emit_function(Rng& rng, CodeModel& model, Bytes& text, std::uint64_t data_delta) {
    model.functions.push_back(text.size());
    text.insert(text.end(), {0x55, 0x48, 0x89, 0xe5});
    if (chance(rng, 0.6)) text.insert(text.end(), {0x48, 0x83, 0xec, static_cast<std::uint8_t>(uniform(rng, 1, 8) * 16)});
    const int items = uniform(rng, 3, 40);
    for (int i = 0; i < items; ++i) {
        const double u = real(rng);
        if (u < 0.6) {
            const auto& seq = model.idiom(rng);
            text.insert(text.end(), seq.begin(), seq.end());
        } else if (u < 0.78) {
            emit_instruction(rng, text);
        } else if (u < 0.93) {  // call a function, preferring popular (early) ones
            const std::size_t n = model.functions.size();
            const auto pick = static_cast<std::size_t>(static_cast<double>(n) * std::pow(real(rng), 2.5));
            const auto target = static_cast<std::int64_t>(model.functions[std::min(pick, n - 1)]);
            text.push_back(0xe8);
            put_le(text, static_cast<std::uint32_t>(target - static_cast<std::int64_t>(text.size() + 4)), 4);
        } else {  // lea reg, [rip+disp32] into .rodata/.data
            text.insert(text.end(), {0x48, 0x8d, static_cast<std::uint8_t>(0x05 | uniform(rng, 0, 7) << 3)});
            put_le(text, static_cast<std::uint32_t>(data_delta - text.size() + static_cast<std::uint64_t>(uniform(rng, 0, 1 << 16)) * 8), 4);
        }
    }
    text.insert(text.end(), {0xc9, 0xc3});
    while (text.size() % 16 != 0) {
        const std::size_t gap = 16 - text.size() % 16;
        if (gap >= 6) text.insert(text.end(), {0x66, 0x0f, 0x1f, 0x44, 0x00, 0x00});
        else if (gap >= 4) text.insert(text.end(), {0x0f, 0x1f, 0x40, 0x00});
        else text.push_back(0x90);
    }
}

inline Bytes elf_executable(Rng& rng, std::size_t target_bytes) {
    const std::size_t text_target = target_bytes * 50 / 100;
    const std::size_t rodata_target = target_bytes * 15 / 100;
    const std::size_t table_target = target_bytes * 25 / 100;
    const std::uint64_t base = 0x400000;

    CodeModel model(rng);
    Bytes text;
    while (text.size() < text_target) emit_function(rng, model, text, text_target + 0x1000);
    auto function_address = [&] {
        return base + 0x1000 + model.functions[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(model.functions.size()) - 1))];
    };

    Vocabulary vocab(rng, 800);
    Bytes rodata;
    Bytes dynstr;
    std::vector<std::uint32_t> name_offsets;
    while (rodata.size() < rodata_target) {
        std::string s;
        switch (uniform(rng, 0, 3)) {
            case 0: s = "error: cannot " + vocab.sample(rng) + " '%s': %s\n"; break;
            case 1: s = "%s: " + vocab.sample(rng) + " " + vocab.sample(rng) + " %d\n"; break;
            case 2: s = "--" + vocab.sample(rng) + "-" + vocab.sample(rng); break;
            default: s = vocab.sample(rng) + " " + vocab.sample(rng) + " " + vocab.sample(rng); break;
        }
        append(rodata, s);
        rodata.push_back(0);
        if (chance(rng, 0.1)) {  // switch jump table: small negative offsets
            const int entries = uniform(rng, 4, 32);
            for (int i = 0; i < entries; ++i) put_le(rodata, static_cast<std::uint32_t>(-uniform(rng, 0x100, 0x4000)), 4);
        }
        if (chance(rng, 0.3)) {  // mangled symbol name for .dynstr
            name_offsets.push_back(static_cast<std::uint32_t>(dynstr.size()));
            append(dynstr, "_ZN" + std::to_string(uniform(rng, 3, 9)) + vocab.sample(rng) + std::to_string(uniform(rng, 3, 9)) +
                               vocab.sample(rng) + "Ev");
            dynstr.push_back(0);
        }
    }

    // .rela.dyn, .dynsym and .eh_frame: fixed-layout records with slowly varying fields.
    Bytes data;
    const std::uint64_t data_base = base + 0x200000;
    std::size_t rela_index = 0;
    std::size_t sym_index = 0;
    std::uint32_t cie_ptr = 0x18;
    while (data.size() < table_target) {
        const double u = real(rng);
        if (u < 0.45) {
            const int run = uniform(rng, 8, 64);
            for (int i = 0; i < run; ++i, ++rela_index) {
                put_le(data, data_base + rela_index * 8, 8);
                put_le(data, 8, 8);  // R_X86_64_RELATIVE
                put_le(data, function_address(), 8);
            }
        } else if (u < 0.7 && !name_offsets.empty()) {
            const int run = uniform(rng, 4, 32);
            for (int i = 0; i < run; ++i, ++sym_index) {
                put_le(data, name_offsets[sym_index % name_offsets.size()], 4);
                data.push_back(0x12);
                data.push_back(0);
                put_le(data, 14, 2);
                put_le(data, function_address(), 8);
                put_le(data, static_cast<std::uint64_t>(small_operand(rng)) * 4 + 16, 8);
            }
        } else {
            const int run = uniform(rng, 4, 32);
            for (int i = 0; i < run; ++i) {
                put_le(data, 0x1c, 4);
                put_le(data, cie_ptr, 4);
                cie_ptr += 0x20;
                put_le(data, static_cast<std::uint32_t>(-static_cast<std::int32_t>(cie_ptr + 0x1000)), 4);
                put_le(data, small_operand(rng) * 4 + 0x20, 4);
                data.insert(data.end(), {0x00, 0x41, 0x0e, 0x10, 0x86, 0x02, 0x43, 0x0d, 0x06});
                data.insert(data.end(), {static_cast<std::uint8_t>(0x40 + uniform(rng, 0, 8)), 0x0c, 0x07, 0x08, 0x00, 0x00, 0x00});
            }
        }
    }
    data.insert(data.end(), dynstr.begin(), dynstr.end());

    Bytes out;
    // ELF64 header
    append(out, "\x7f" "ELF");
    out.insert(out.end(), {2, 1, 1, 0});
    out.resize(16, 0);
    put_le(out, 3, 2);     // ET_DYN
    put_le(out, 0x3e, 2);  // x86-64
    put_le(out, 1, 4);
    put_le(out, base + 0x1000, 8);
    put_le(out, 64, 8);
    put_le(out, 0, 8);
    put_le(out, 0, 4);
    put_le(out, 64, 2);
    put_le(out, 56, 2);
    put_le(out, 3, 2);
    put_le(out, 64, 2);
    put_le(out, 0, 2);
    put_le(out, 0, 2);
    const std::array<std::pair<std::uint32_t, std::size_t>, 3> segments{{{5, text.size()}, {4, rodata.size()}, {6, data.size()}}};
    std::size_t offset = 0x1000;
    for (const auto& [flags, size] : segments) {
        put_le(out, 1, 4);
        put_le(out, flags, 4);
        put_le(out, offset, 8);
        put_le(out, base + offset, 8);
        put_le(out, base + offset, 8);
        put_le(out, size, 8);
        put_le(out, size, 8);
        put_le(out, 0x1000, 8);
        offset += (size + 0xFFF) & ~std::size_t{0xFFF};
    }
    for (const Bytes* section : {&text, &rodata, &data}) {
        out.resize((out.size() + 0xFFF) & ~std::size_t{0xFFF}, 0);
        out.insert(out.end(), section->begin(), section->end());
    }
    return out;
}

} // namespace detail

/// One synthetic file of the given category, roughly `target_bytes` long.
[[nodiscard]] inline Bytes make_file(FileType type, std::uint64_t seed, std::size_t target_bytes) {
    Rng rng(seed);
    switch (type) {
        case FileType::TXT: {
            const auto text = detail::prose(rng, target_bytes);
            return Bytes(text.begin(), text.end());
        }
        case FileType::IMG: return detail::photo(rng, target_bytes);
        case FileType::PDF: return detail::pdf_document(rng, target_bytes);
        case FileType::MP3: return detail::mp3_stream(rng, target_bytes);
        case FileType::VIDEO: return detail::avi_video(rng, target_bytes);
        case FileType::BIN: return detail::elf_executable(rng, target_bytes);
    }
    throw std::invalid_argument("make_file: unknown file type");
}

[[nodiscard]] inline std::string_view extension(FileType type) noexcept {
    switch (type) {
        case FileType::IMG: return ".jpg";
        case FileType::PDF: return ".pdf";
        case FileType::TXT: return ".txt";
        case FileType::MP3: return ".mp3";
        case FileType::VIDEO: return ".avi";
        case FileType::BIN: return ".elf";
    }
    return "";
}

struct CorpusLayout {
    std::size_t files_per_type = 2;
    std::size_t bytes_per_file = 1 << 20;
};

/// Populates raw_dir/<type>/ with synthetic files; returns the paths written.
inline std::vector<std::filesystem::path> write_raw_corpus(const std::filesystem::path& raw_dir, const CorpusLayout& layout,
                                                           std::uint64_t seed) {
    std::vector<std::filesystem::path> written;
    for (auto type : kAllFileTypes) {
        const auto dir = raw_dir / std::string(subdirectory(type));
        std::filesystem::create_directories(dir);
        for (std::size_t i = 0; i < layout.files_per_type; ++i) {
            const auto file_seed = derive_seed(seed, string_tag(to_string(type)), i);
            const Bytes content = make_file(type, file_seed, layout.bytes_per_file);
            char name[32];
            std::snprintf(name, sizeof name, "%s%03zu", std::string(subdirectory(type)).c_str(), i);
            const auto path = dir / (std::string(name) + std::string(extension(type)));
            std::ofstream f(path, std::ios::binary);
            f.write(reinterpret_cast<const char*>(content.data()), static_cast<std::streamsize>(content.size()));
            if (!f) throw std::runtime_error("cannot write " + path.string());
            written.push_back(path);
        }
    }
    return written;
}

} // namespace hedge::synth

#endif // HEDGE_SYNTH_HPP
