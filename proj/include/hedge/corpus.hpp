// hedge - encrypted vs. compressed payload classification
// Labeled corpus construction: every raw file yields cipher and compressor variants,
// each variant is cut into fixed-size chunks, and a TSV manifest records where every
// chunk lives together with its SHA-256.

#ifndef HEDGE_CORPUS_HPP
#define HEDGE_CORPUS_HPP

#include "hedge/digest.hpp"
#include "hedge/filetype.hpp"
#include "hedge/parallel.hpp"
#include "hedge/transforms.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hedge {

namespace fs = std::filesystem;

inline constexpr std::array<std::size_t, 7> kSizeClasses{1024, 2048, 4096, 8192, 16384, 32768, 65536};

enum class StorageMode { Packed, PerChunk };

[[nodiscard]] inline std::string_view to_string(StorageMode m) noexcept {
    return m == StorageMode::Packed ? "packed" : "per-chunk";
}

[[nodiscard]] inline StorageMode parse_storage(std::string_view s) {
    if (s == "packed") return StorageMode::Packed;
    if (s == "per-chunk") return StorageMode::PerChunk;
    throw std::invalid_argument("unknown storage mode '" + std::string(s) + "'");
}

struct GeneratorConfig {
    std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
    std::vector<std::size_t> sizes{kSizeClasses.begin(), kSizeClasses.end()};
    StorageMode storage = StorageMode::Packed;
    bool drop_first_chunk = false;  // drops chunk 0 so container magic never reaches the corpus
    std::size_t workers = 0;
};

/// What was actually generated; written to the manifest header.
struct GeneratorSummary {
    std::uint64_t seed = 0;
    std::vector<Method> methods;
    std::vector<Method> skipped;
    std::vector<std::size_t> sizes;
    StorageMode storage = StorageMode::Packed;
    bool drop_first_chunk = false;
    std::size_t files_per_type = 0;

    friend bool operator==(const GeneratorSummary&, const GeneratorSummary&) = default;
};

struct ChunkRecord {
    std::string chunk_id;
    std::string source_file;  // relative to the raw directory
    FileType filetype = FileType::BIN;
    Transform transform;
    std::size_t size_class = 0;
    std::size_t chunk_index = 0;
    std::string locator;  // "@<offset>" into the packed file, or a relative chunk path
    Sha256 digest{};

    [[nodiscard]] bool encrypted() const noexcept { return transform.kind == TransformKind::Encrypt; }
    friend bool operator==(const ChunkRecord&, const ChunkRecord&) = default;
};

struct DatasetManifest {
    GeneratorSummary config;
    std::vector<ChunkRecord> records;  // sorted by chunk_id
};

/// A manifest plus the directory holding its payloads.
struct Dataset {
    fs::path root;
    DatasetManifest manifest;
};

inline constexpr std::string_view kManifestName = "manifest.tsv";
inline constexpr std::string_view kPackedName = "chunks.bin";
inline constexpr std::string_view kChunkDirName = "chunks";

// ---------------------------------------------------------------------------
// Variants and chunking

struct Variant {
    Method method = Method::AES128;
    Bytes data;
};

struct VariantSet {
    std::vector<Variant> variants;
    std::vector<Method> skipped;  // unavailable back ends
};

namespace detail {

struct CipherMaterial {
    Bytes key;
    std::array<std::uint8_t, 16> iv{};
};

// Key and initial counter block from SHA-256 over (seed, file name, file digest, method).
inline CipherMaterial cipher_material(std::uint64_t key_seed, std::string_view name, const Sha256& content_digest,
                                      Method m) {
    auto hash = [&](std::string_view purpose) {
        return Sha256Hasher{}
            .update(purpose)
            .update_u64(key_seed)
            .update(name)
            .update(content_digest)
            .update(to_string(m))
            .finish();
    };
    const Sha256 k1 = hash("key-1");
    const Sha256 k2 = hash("key-2");
    const Sha256 nonce = hash("nonce");
    CipherMaterial cm;
    cm.key.resize(k1.size() + k2.size());
    std::copy(k2.begin(), k2.end(), std::copy(k1.begin(), k1.end(), cm.key.begin()));
    cm.key.resize(key_bytes(m));
    std::copy_n(nonce.begin(), 16, cm.iv.begin());
    return cm;
}

} // namespace detail

/// All requested variants of one file's content. Encryption variants are raw CTR
/// ciphertext; compression variants keep their container framing.
[[nodiscard]] inline VariantSet create_variants(std::span<const std::uint8_t> content, std::string_view name,
                                                std::span<const Method> methods, std::uint64_t key_seed,
                                                const fs::path& scratch_dir = fs::temp_directory_path()) {
    if (content.empty()) throw std::invalid_argument("create_variants: '" + std::string(name) + "' is empty");
    const Sha256 digest = sha256(content);
    const std::string entry = fs::path(std::string(name)).filename().string();
    VariantSet out;
    for (Method m : methods) {
        switch (m) {
            case Method::AES128:
            case Method::AES192:
            case Method::AES256:
            case Method::CAMELLIA128:
            case Method::CAMELLIA192:
            case Method::CAMELLIA256: {
                if (!cipher_available(m)) {
                    out.skipped.push_back(m);
                    break;
                }
                const auto cm = detail::cipher_material(key_seed, name, digest, m);
                out.variants.push_back({m, encrypt_ctr(m, content, cm.key, cm.iv)});
                break;
            }
            case Method::ZIP: out.variants.push_back({m, zip_compress(content, entry)}); break;
            case Method::GZIP: out.variants.push_back({m, gzip_compress(content)}); break;
            case Method::BZIP2: out.variants.push_back({m, bzip2_compress(content)}); break;
            case Method::RAR: {
                auto rar = rar_compress(content, entry, scratch_dir);
                if (rar) out.variants.push_back({m, std::move(*rar)});
                else out.skipped.push_back(m);
                break;
            }
        }
    }
    return out;
}

[[nodiscard]] inline Bytes read_file(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    Bytes data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (f.bad()) throw std::runtime_error("failed reading " + path.string());
    return data;
}

[[nodiscard]] inline VariantSet create_variants(const fs::path& file, std::span<const Method> methods,
                                                std::uint64_t key_seed) {
    const Bytes content = read_file(file);
    return create_variants(content, file.filename().string(), methods, key_seed);
}

struct ChunkSpan {
    std::size_t size_class = 0;
    std::size_t index = 0;
    std::size_t offset = 0;

    friend bool operator==(const ChunkSpan&, const ChunkSpan&) = default;
};

/// Consecutive non-overlapping chunks from offset 0 for every size; the trailing
/// partial chunk is dropped.
[[nodiscard]] inline std::vector<ChunkSpan> split_file(std::size_t variant_length, std::span<const std::size_t> sizes) {
    std::vector<ChunkSpan> out;
    for (std::size_t s : sizes) {
        if (s == 0) throw std::invalid_argument("split_file: chunk sizes must be positive");
        for (std::size_t i = 0; i < variant_length / s; ++i) out.push_back({s, i, i * s});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Manifest I/O

namespace detail {

inline std::string join_methods(std::span<const Method> ms) {
    std::string out;
    for (auto m : ms) {
        if (!out.empty()) out += ',';
        out += to_string(m);
    }
    return out.empty() ? "-" : out;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    for (;;) {
        const auto pos = s.find(sep);
        out.push_back(s.substr(0, pos));
        if (pos == std::string_view::npos) return out;
        s.remove_prefix(pos + 1);
    }
}

template <typename T>
T to_integer(std::string_view s, std::string_view what) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::runtime_error("manifest: bad " + std::string(what) + " '" + std::string(s) + "'");
    return v;
}

inline Sha256 from_hex(std::string_view hex) {
    if (hex.size() != 64) throw std::runtime_error("manifest: digest must have 64 hex digits");
    Sha256 out{};
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        throw std::runtime_error("manifest: digest is not lowercase hex");
    };
    for (std::size_t i = 0; i < 32; ++i)
        out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    return out;
}

inline constexpr std::string_view kManifestColumns =
    "chunk_id\tsource_file\tfiletype\tkind\tmethod\tsize_class\tchunk_index\tlocator\tsha256";

} // namespace detail

inline void write_manifest(std::ostream& out, const DatasetManifest& m) {
    const auto& c = m.config;
    out << "#hedge-manifest v1 seed=" << c.seed << " methods=" << detail::join_methods(c.methods)
        << " skipped=" << detail::join_methods(c.skipped) << " sizes=";
    for (std::size_t i = 0; i < c.sizes.size(); ++i) out << (i ? "," : "") << c.sizes[i];
    out << " storage=" << to_string(c.storage) << " drop_first_chunk=" << (c.drop_first_chunk ? 1 : 0)
        << " files_per_type=" << c.files_per_type << '\n';
    out << detail::kManifestColumns << '\n';
    for (const auto& r : m.records) {
        out << r.chunk_id << '\t' << r.source_file << '\t' << to_string(r.filetype) << '\t'
            << to_string(r.transform.kind) << '\t' << to_string(r.transform.method) << '\t' << r.size_class << '\t'
            << r.chunk_index << '\t' << r.locator << '\t' << to_hex(r.digest) << '\n';
    }
}

[[nodiscard]] inline DatasetManifest read_manifest(std::istream& in) {
    DatasetManifest m;
    std::string line;
    if (!std::getline(in, line) || !line.starts_with("#hedge-manifest v1"))
        throw std::runtime_error("manifest: missing '#hedge-manifest v1' header");
    std::set<std::string, std::less<>> seen;
    for (auto field : detail::split(std::string_view(line).substr(std::string_view("#hedge-manifest v1").size()), ' ')) {
        if (field.empty()) continue;
        const auto eq = field.find('=');
        if (eq == std::string_view::npos) throw std::runtime_error("manifest: bad header field '" + std::string(field) + "'");
        const auto key = field.substr(0, eq);
        const auto value = field.substr(eq + 1);
        seen.emplace(key);
        auto methods = [&] {
            std::vector<Method> out;
            if (value != "-")
                for (auto name : detail::split(value, ',')) out.push_back(parse_method(name));
            return out;
        };
        if (key == "seed") m.config.seed = detail::to_integer<std::uint64_t>(value, "seed");
        else if (key == "methods") m.config.methods = methods();
        else if (key == "skipped") m.config.skipped = methods();
        else if (key == "sizes") {
            for (auto s : detail::split(value, ',')) m.config.sizes.push_back(detail::to_integer<std::size_t>(s, "size"));
        } else if (key == "storage") m.config.storage = parse_storage(value);
        else if (key == "drop_first_chunk") m.config.drop_first_chunk = value == "1";
        else if (key == "files_per_type") m.config.files_per_type = detail::to_integer<std::size_t>(value, "files_per_type");
        else throw std::runtime_error("manifest: unknown header field '" + std::string(key) + "'");
    }
    for (std::string_view required : {"seed", "methods", "sizes", "storage"})
        if (!seen.contains(required)) throw std::runtime_error("manifest: header lacks '" + std::string(required) + "'");
    if (!std::getline(in, line) || line != detail::kManifestColumns)
        throw std::runtime_error("manifest: unexpected column header");
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cols = detail::split(line, '\t');
        if (cols.size() != 9)
            throw std::runtime_error("manifest: line " + std::to_string(line_no) + " has " + std::to_string(cols.size()) +
                                     " fields, expected 9");
        ChunkRecord r;
        r.chunk_id = cols[0];
        r.source_file = cols[1];
        r.filetype = parse_filetype(cols[2]);
        r.transform = Transform::of(parse_method(cols[4]));
        if (r.transform.kind != parse_kind(cols[3]))
            throw std::runtime_error("manifest: line " + std::to_string(line_no) + " kind does not match method");
        r.size_class = detail::to_integer<std::size_t>(cols[5], "size_class");
        r.chunk_index = detail::to_integer<std::size_t>(cols[6], "chunk_index");
        r.locator = cols[7];
        r.digest = detail::from_hex(cols[8]);
        m.records.push_back(std::move(r));
    }
    std::set<std::string_view> ids;
    for (const auto& r : m.records)
        if (!ids.insert(r.chunk_id).second) throw std::runtime_error("manifest: duplicate chunk_id '" + r.chunk_id + "'");
    return m;
}

inline void save_manifest(const fs::path& path, const DatasetManifest& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest " + path.string());
    write_manifest(out, m);
    if (!out) throw std::runtime_error("failed writing manifest " + path.string());
}

[[nodiscard]] inline DatasetManifest load_manifest(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open manifest " + path.string());
    return read_manifest(in);
}

/// Opens a dataset directory, or a manifest file whose directory holds the payloads.
[[nodiscard]] inline Dataset open_dataset(const fs::path& path) {
    const bool is_dir = fs::is_directory(path);
    const fs::path manifest = is_dir ? path / kManifestName : path;
    return {is_dir ? path : path.parent_path(), load_manifest(manifest)};
}

// ---------------------------------------------------------------------------
// Payload storage

/// Appends variants to a dataset directory and produces their chunk records.
class DatasetWriter {
public:
    DatasetWriter(fs::path root, StorageMode mode) : root_(std::move(root)), mode_(mode) {
        fs::create_directories(root_);
        if (mode_ == StorageMode::Packed) {
            packed_.open(root_ / kPackedName, std::ios::binary | std::ios::trunc);
            if (!packed_) throw std::runtime_error("cannot create " + (root_ / kPackedName).string());
        } else {
            fs::create_directories(root_ / kChunkDirName);
        }
    }

    std::vector<ChunkRecord> add_variant(std::string_view source_file, FileType type, Method method,
                                         std::span<const std::uint8_t> data, std::span<const std::size_t> sizes,
                                         bool drop_first_chunk = false) {
        std::uint64_t base = 0;
        if (mode_ == StorageMode::Packed) {
            base = packed_offset_;
            packed_.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
            if (!packed_) throw std::runtime_error("failed writing packed chunk store");
            packed_offset_ += data.size();
        }
        std::vector<ChunkRecord> out;
        for (const auto& span : split_file(data.size(), sizes)) {
            if (drop_first_chunk && span.index == 0) continue;
            const auto payload = data.subspan(span.offset, span.size_class);
            ChunkRecord r;
            r.source_file = std::string(source_file);
            r.filetype = type;
            r.transform = Transform::of(method);
            r.size_class = span.size_class;
            r.chunk_index = span.index;
            r.chunk_id = make_chunk_id(source_file, method, span.size_class, span.index);
            r.digest = sha256(payload);
            if (mode_ == StorageMode::Packed) {
                r.locator = "@" + std::to_string(base + span.offset);
            } else {
                const std::string hex = to_hex(r.digest);
                const fs::path rel = fs::path(std::string(kChunkDirName)) / hex.substr(0, 2) / (hex + ".bin");
                r.locator = rel.generic_string();
                const fs::path full = root_ / rel;
                if (!fs::exists(full)) {
                    fs::create_directories(full.parent_path());
                    std::ofstream f(full, std::ios::binary);
                    f.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
                    if (!f) throw std::runtime_error("failed writing " + full.string());
                }
            }
            out.push_back(std::move(r));
        }
        return out;
    }

    void close() {
        if (packed_.is_open()) packed_.close();
    }

    static std::string make_chunk_id(std::string_view source_file, Method method, std::size_t size, std::size_t index) {
        char tail[48];
        std::snprintf(tail, sizeof tail, ":%05zu:%06zu", size, index);
        return std::string(source_file) + ":" + std::string(to_string(method)) + tail;
    }

private:
    fs::path root_;
    StorageMode mode_;
    std::ofstream packed_;
    std::uint64_t packed_offset_ = 0;
};

/// Reads chunk payloads back, checking length and digest.
class ChunkReader {
public:
    explicit ChunkReader(const Dataset& ds) : root_(ds.root) {}

    [[nodiscard]] Bytes load(const ChunkRecord& r, bool verify = true) {
        Bytes data(r.size_class);
        if (!r.locator.empty() && r.locator.front() == '@') {
            if (!packed_.is_open()) {
                packed_.open(root_ / kPackedName, std::ios::binary);
                if (!packed_) throw std::runtime_error("cannot open " + (root_ / kPackedName).string());
            }
            const auto offset = detail::to_integer<std::uint64_t>(std::string_view(r.locator).substr(1), "offset");
            packed_.clear();
            packed_.seekg(static_cast<std::streamoff>(offset));
            packed_.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
            if (packed_.gcount() != static_cast<std::streamsize>(data.size()))
                throw std::runtime_error("chunk " + r.chunk_id + ": packed store is truncated");
        } else {
            std::ifstream f(root_ / r.locator, std::ios::binary);
            if (!f) throw std::runtime_error("chunk " + r.chunk_id + ": cannot open " + r.locator);
            f.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
            if (f.gcount() != static_cast<std::streamsize>(data.size()) || f.peek() != std::ifstream::traits_type::eof())
                throw std::runtime_error("chunk " + r.chunk_id + ": payload length differs from size class");
        }
        if (verify && sha256(data) != r.digest)
            throw std::runtime_error("chunk " + r.chunk_id + ": digest mismatch");
        return data;
    }

private:
    fs::path root_;
    std::ifstream packed_;
};

// ---------------------------------------------------------------------------
// Dataset generation

struct GenerationResult {
    Dataset dataset;
    std::vector<std::string> warnings;
};

/// Raw files per category, sorted by name and truncated to the smallest category.
[[nodiscard]] inline std::map<FileType, std::vector<fs::path>> collect_raw_files(const fs::path& raw_dir,
                                                                                 std::vector<std::string>* warnings) {
    std::map<FileType, std::vector<fs::path>> files;
    std::vector<std::string> missing;
    for (auto t : kAllFileTypes) {
        const fs::path dir = raw_dir / std::string(subdirectory(t));
        std::vector<fs::path> found;
        if (fs::is_directory(dir)) {
            for (const auto& e : fs::directory_iterator(dir)) {
                if (!e.is_regular_file()) continue;
                if (e.file_size() == 0) {
                    if (warnings) warnings->push_back("skipping empty file " + e.path().string());
                    continue;
                }
                found.push_back(e.path());
            }
        }
        if (found.empty()) missing.emplace_back(subdirectory(t));
        std::sort(found.begin(), found.end());
        files[t] = std::move(found);
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m + "/";
        throw std::runtime_error("raw directory " + raw_dir.string() + " has no files for: " + list);
    }
    std::size_t min_count = SIZE_MAX;
    for (const auto& [t, v] : files) min_count = std::min(min_count, v.size());
    for (auto& [t, v] : files) {
        if (v.size() > min_count && warnings)
            warnings->push_back("truncating " + std::string(subdirectory(t)) + "/ from " + std::to_string(v.size()) +
                                " to " + std::to_string(min_count) + " files");
        v.resize(min_count);
    }
    return files;
}

/// Builds the labeled chunk corpus under out_dir (manifest.tsv plus payloads).
[[nodiscard]] inline GenerationResult generate_dataset(const fs::path& raw_dir, const fs::path& out_dir,
                                                       const GeneratorConfig& config, std::uint64_t seed) {
    if (config.methods.empty()) throw std::invalid_argument("generate_dataset: no transform methods selected");
    if (config.sizes.empty()) throw std::invalid_argument("generate_dataset: no size classes selected");
    for (auto s : config.sizes)
        if (s == 0) throw std::invalid_argument("generate_dataset: size classes must be positive");

    GenerationResult result;
    const auto files = collect_raw_files(raw_dir, &result.warnings);

    struct Job {
        FileType type;
        fs::path path;
        std::string relative;
    };
    std::vector<Job> jobs;
    for (const auto& [t, paths] : files)
        for (const auto& p : paths) jobs.push_back({t, p, fs::relative(p, raw_dir).generic_string()});

    const fs::path scratch = out_dir / ".scratch";
    DatasetWriter writer(out_dir, config.storage);
    std::set<Method> skipped;
    std::vector<ChunkRecord> records;
    const std::size_t workers = effective_workers(config.workers);
    // Variants are built in parallel a batch at a time and written in job order,
    // so the packed layout does not depend on scheduling.
    for (std::size_t start = 0; start < jobs.size(); start += workers) {
        const std::size_t count = std::min(workers, jobs.size() - start);
        auto batch = parallel_map(count, workers, [&](std::size_t i) {
            const auto& job = jobs[start + i];
            const Bytes content = read_file(job.path);
            return create_variants(content, job.relative, config.methods, seed, scratch);
        });
        for (std::size_t i = 0; i < count; ++i) {
            const auto& job = jobs[start + i];
            for (auto m : batch[i].skipped) skipped.insert(m);
            for (const auto& v : batch[i].variants) {
                auto recs = writer.add_variant(job.relative, job.type, v.method, v.data, config.sizes,
                                               config.drop_first_chunk);
                records.insert(records.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
            }
        }
    }
    writer.close();
    std::error_code ec;
    fs::remove_all(scratch, ec);

    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.chunk_id < b.chunk_id; });

    auto& summary = result.dataset.manifest.config;
    summary.seed = seed;
    for (auto m : config.methods)
        if (!skipped.contains(m)) summary.methods.push_back(m);
    summary.skipped.assign(skipped.begin(), skipped.end());
    summary.sizes = config.sizes;
    summary.storage = config.storage;
    summary.drop_first_chunk = config.drop_first_chunk;
    summary.files_per_type = files.begin()->second.size();
    for (auto m : summary.skipped)
        result.warnings.push_back(std::string(to_string(m)) + " is unavailable on this system and was skipped");

    result.dataset.root = out_dir;
    result.dataset.manifest.records = std::move(records);
    save_manifest(out_dir / kManifestName, result.dataset.manifest);
    return result;
}

// ---------------------------------------------------------------------------
// Balanced sampling

/// Seed-deterministic uniform subset with exactly `per_label` encrypted and
/// `per_label` compressed chunks of one size class, sorted by chunk_id.
[[nodiscard]] inline DatasetManifest balance_sample(const DatasetManifest& manifest, std::size_t per_label,
                                                    std::size_t size_class, std::uint64_t seed) {
    std::vector<const ChunkRecord*> enc;
    std::vector<const ChunkRecord*> cmp;
    for (const auto& r : manifest.records)
        if (r.size_class == size_class) (r.encrypted() ? enc : cmp).push_back(&r);
    if (enc.size() < per_label || cmp.size() < per_label)
        throw std::runtime_error("balance_sample: size class " + std::to_string(size_class) + " has " +
                                 std::to_string(enc.size()) + " encrypted and " + std::to_string(cmp.size()) +
                                 " compressed chunks; " + std::to_string(per_label) + " per label requested");
    // Ranking by a keyed hash of chunk_id is a uniform random permutation that does
    // not depend on record order.
    auto pick = [&](std::vector<const ChunkRecord*>& pool) {
        std::vector<std::pair<std::uint64_t, const ChunkRecord*>> keyed;
        keyed.reserve(pool.size());
        for (const auto* r : pool) keyed.emplace_back(derive_seed(seed, size_class, string_tag(r->chunk_id)), r);
        std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first < b.first : a.second->chunk_id < b.second->chunk_id;
        });
        keyed.resize(per_label);
        return keyed;
    };
    DatasetManifest out;
    out.config = manifest.config;
    for (auto* pool : {&enc, &cmp})
        for (const auto& [key, r] : pick(*pool)) out.records.push_back(*r);
    std::sort(out.records.begin(), out.records.end(), [](const auto& a, const auto& b) { return a.chunk_id < b.chunk_id; });
    return out;
}

} // namespace hedge

#endif // HEDGE_CORPUS_HPP
