// hedge - encrypted vs. compressed payload classification
// Benchmark file-type categories.

#ifndef HEDGE_FILETYPE_HPP
#define HEDGE_FILETYPE_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hedge {

enum class FileType { IMG, PDF, TXT, MP3, VIDEO, BIN };

inline constexpr std::array<FileType, 6> kAllFileTypes{FileType::IMG, FileType::PDF,   FileType::TXT,
                                                       FileType::MP3, FileType::VIDEO, FileType::BIN};

[[nodiscard]] constexpr std::string_view to_string(FileType t) noexcept {
    switch (t) {
        case FileType::IMG: return "IMG";
        case FileType::PDF: return "PDF";
        case FileType::TXT: return "TXT";
        case FileType::MP3: return "MP3";
        case FileType::VIDEO: return "VIDEO";
        case FileType::BIN: return "BIN";
    }
    return "?";
}

/// Raw-corpus subdirectory holding files of this type.
[[nodiscard]] constexpr std::string_view subdirectory(FileType t) noexcept {
    switch (t) {
        case FileType::IMG: return "img";
        case FileType::PDF: return "pdf";
        case FileType::TXT: return "txt";
        case FileType::MP3: return "mp3";
        case FileType::VIDEO: return "video";
        case FileType::BIN: return "bin";
    }
    return "?";
}

[[nodiscard]] inline FileType parse_filetype(std::string_view name) {
    for (auto t : kAllFileTypes)
        if (to_string(t) == name || subdirectory(t) == name) return t;
    throw std::invalid_argument("unknown file type '" + std::string(name) + "'");
}

} // namespace hedge

#endif // HEDGE_FILETYPE_HPP
