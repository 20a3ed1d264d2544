// hedge - encrypted vs. compressed payload classification
// Evaluation harness: inverse 10-fold protocol (train on 5% of the encrypted chunks,
// set aside the same share of compressed chunks, test on the rest), gamma sweeps,
// per-filetype accuracy and CSV report emission.

#ifndef HEDGE_EVAL_HPP
#define HEDGE_EVAL_HPP

#include "hedge/classifier.hpp"
#include "hedge/corpus.hpp"
#include "hedge/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace hedge {

struct ConfusionCounts {
    std::size_t tp = 0;  // encrypted, classified Encrypted
    std::size_t fn = 0;  // encrypted, classified Compressed
    std::size_t fp = 0;  // compressed, classified Encrypted
    std::size_t tn = 0;  // compressed, classified Compressed

    [[nodiscard]] std::size_t total() const noexcept { return tp + fn + fp + tn; }
    [[nodiscard]] double pct(std::size_t v) const noexcept {
        return total() == 0 ? 0.0 : 100.0 * static_cast<double>(v) / static_cast<double>(total());
    }
    [[nodiscard]] double accuracy_pct() const noexcept { return pct(tp + tn); }
    [[nodiscard]] double tp_rate() const noexcept {
        return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    }
    [[nodiscard]] double tn_rate() const noexcept {
        return fp + tn == 0 ? 0.0 : static_cast<double>(tn) / static_cast<double>(fp + tn);
    }

    ConfusionCounts& operator+=(const ConfusionCounts& o) noexcept {
        tp += o.tp;
        fn += o.fn;
        fp += o.fp;
        tn += o.tn;
        return *this;
    }
    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

inline void tally(ConfusionCounts& c, bool encrypted, Label verdict) noexcept {
    const bool said_encrypted = verdict == Label::Encrypted;
    if (encrypted) (said_encrypted ? c.tp : c.fn) += 1;
    else (said_encrypted ? c.fp : c.tn) += 1;
}

/// One chunk reduced to what the protocol needs.
struct FeatureRow {
    const ChunkRecord* record = nullptr;
    FeatureVector features;
};

/// Features keyed by chunk_id. Every test runs once per chunk however many
/// repetitions and gamma values reuse it.
class FeatureCache {
public:
    explicit FeatureCache(TestConfig cfg = {}, std::size_t workers = 0) : cfg_(cfg), workers_(workers) {
        cfg_.validate();
    }

    [[nodiscard]] const TestConfig& config() const noexcept { return cfg_; }

    std::vector<FeatureRow> rows(const Dataset& ds, std::span<const ChunkRecord> records) {
        std::vector<const ChunkRecord*> todo;
        for (const auto& r : records)
            if (!cache_.contains(r.chunk_id)) todo.push_back(&r);
        if (!todo.empty()) {
            const std::size_t workers = std::min(effective_workers(workers_), todo.size());
            std::vector<FeatureVector> computed(todo.size());
            // Contiguous slices so each worker keeps one open chunk reader.
            parallel_for(workers, workers, [&](std::size_t w) {
                ChunkReader reader(ds);
                for (std::size_t i = w * todo.size() / workers; i < (w + 1) * todo.size() / workers; ++i) {
                    const auto stream = ByteStream::from_bytes(reader.load(*todo[i]));
                    computed[i] = extract_features(run_all(stream, cfg_));
                }
            });
            for (std::size_t i = 0; i < todo.size(); ++i) cache_.emplace(todo[i]->chunk_id, computed[i]);
        }
        std::vector<FeatureRow> out;
        out.reserve(records.size());
        for (const auto& r : records) out.push_back({&r, cache_.at(r.chunk_id)});
        return out;
    }

private:
    TestConfig cfg_;
    std::size_t workers_;
    std::unordered_map<std::string, FeatureVector> cache_;
};

namespace detail {

inline constexpr std::uint64_t kBalanceTag = 0x62616c616e6365ull;
inline constexpr std::uint64_t kSplitTag = 0x73706c6974ull;
inline constexpr std::uint64_t kFiletypeTag = 0x66696c6574797065ull;

// Rows ranked by a keyed hash of chunk_id: a seeded uniform permutation.
inline std::vector<const FeatureRow*> seeded_order(std::vector<const FeatureRow*> rows, std::uint64_t seed) {
    std::vector<std::pair<std::uint64_t, const FeatureRow*>> keyed;
    keyed.reserve(rows.size());
    for (const auto* r : rows) keyed.emplace_back(derive_seed(seed, string_tag(r->record->chunk_id)), r);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second->record->chunk_id < b.second->record->chunk_id;
    });
    std::vector<const FeatureRow*> out;
    out.reserve(keyed.size());
    for (const auto& [k, r] : keyed) out.push_back(r);
    return out;
}

} // namespace detail

/// round-half-up(0.05 * n)
[[nodiscard]] constexpr std::size_t train_share(std::size_t n) noexcept { return (n * 5 + 50) / 100; }

[[nodiscard]] constexpr std::uint64_t repetition_seed(std::uint64_t seed, std::size_t size_class, std::size_t rep) noexcept {
    return derive_seed(seed, detail::kSplitTag, size_class, rep);
}

[[nodiscard]] constexpr std::uint64_t balance_seed(std::uint64_t seed, std::size_t size_class) noexcept {
    return derive_seed(seed, detail::kBalanceTag, size_class);
}

/// The split of one repetition: which rows train, which are set aside, which test.
struct TenfoldSplit {
    std::vector<const FeatureRow*> train;      // encrypted
    std::vector<const FeatureRow*> discarded;  // compressed, used nowhere
    std::vector<const FeatureRow*> test;
};

[[nodiscard]] inline TenfoldSplit tenfold_split(std::span<const FeatureRow> rows, std::uint64_t seed) {
    std::vector<const FeatureRow*> enc;
    std::vector<const FeatureRow*> cmp;
    for (const auto& r : rows) (r.record->encrypted() ? enc : cmp).push_back(&r);
    if (enc.size() < 20 || cmp.size() < 20)
        throw std::invalid_argument("inverse 10-fold needs at least 20 chunks per label, got " + std::to_string(enc.size()) +
                                    " encrypted and " + std::to_string(cmp.size()) + " compressed");
    enc = detail::seeded_order(std::move(enc), derive_seed(seed, 1));
    cmp = detail::seeded_order(std::move(cmp), derive_seed(seed, 2));
    const std::size_t n_train = train_share(enc.size());
    const std::size_t n_discard = train_share(cmp.size());
    TenfoldSplit split;
    split.train.assign(enc.begin(), enc.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.discarded.assign(cmp.begin(), cmp.begin() + static_cast<std::ptrdiff_t>(n_discard));
    split.test.assign(enc.begin() + static_cast<std::ptrdiff_t>(n_train), enc.end());
    split.test.insert(split.test.end(), cmp.begin() + static_cast<std::ptrdiff_t>(n_discard), cmp.end());
    return split;
}

[[nodiscard]] inline ThresholdModel train_on(std::span<const FeatureRow* const> rows, double gamma) {
    std::vector<double> chi;
    chi.reserve(rows.size());
    for (const auto* r : rows) chi.push_back(r->features.chi_abs);
    return train_from_statistics(chi, gamma);
}

/// One repetition over precomputed features.
[[nodiscard]] inline ConfusionCounts inverse_tenfold_once(std::span<const FeatureRow> rows, double gamma,
                                                          std::uint64_t seed) {
    const auto split = tenfold_split(rows, seed);
    const auto model = train_on(split.train, gamma);
    ConfusionCounts c;
    for (const auto* r : split.test) tally(c, r->record->encrypted(), classify(r->features, model).label);
    return c;
}

/// One repetition over the chunks of `size_class` in a (balanced) dataset.
[[nodiscard]] inline ConfusionCounts inverse_tenfold_once(const Dataset& ds, std::size_t size_class, double gamma,
                                                          const TestConfig& cfg, std::uint64_t seed,
                                                          std::size_t workers = 0) {
    std::vector<ChunkRecord> records;
    for (const auto& r : ds.manifest.records)
        if (r.size_class == size_class) records.push_back(r);
    FeatureCache cache(cfg, workers);
    const auto rows = cache.rows(ds, records);
    return inverse_tenfold_once(rows, gamma, seed);
}

// ---------------------------------------------------------------------------
// Experiments

struct CellResult {
    std::size_t size_class = 0;
    double gamma = 0.0;
    std::vector<ConfusionCounts> repetitions;

    [[nodiscard]] double mean_of(double (*f)(const ConfusionCounts&)) const {
        double s = 0.0;
        for (const auto& c : repetitions) s += f(c);
        return repetitions.empty() ? 0.0 : s / static_cast<double>(repetitions.size());
    }
    /// Sample standard deviation over repetitions (0 for a single repetition).
    [[nodiscard]] double stddev_of(double (*f)(const ConfusionCounts&)) const {
        if (repetitions.size() < 2) return 0.0;
        const double m = mean_of(f);
        double s = 0.0;
        for (const auto& c : repetitions) s += (f(c) - m) * (f(c) - m);
        return std::sqrt(s / static_cast<double>(repetitions.size() - 1));
    }
    [[nodiscard]] double mean_accuracy() const {
        return mean_of([](const ConfusionCounts& c) { return c.accuracy_pct(); });
    }
    [[nodiscard]] double stddev_accuracy() const {
        return stddev_of([](const ConfusionCounts& c) { return c.accuracy_pct(); });
    }
    [[nodiscard]] double mean_tp_rate() const {
        return mean_of([](const ConfusionCounts& c) { return c.tp_rate(); });
    }
    [[nodiscard]] double mean_tn_rate() const {
        return mean_of([](const ConfusionCounts& c) { return c.tn_rate(); });
    }
};

struct FiletypeAccuracy {
    std::size_t size_class = 0;
    double gamma = 0.0;
    FileType filetype = FileType::BIN;
    bool encrypted = false;
    std::size_t correct = 0;
    std::size_t total = 0;

    [[nodiscard]] double accuracy_pct() const noexcept {
        return total == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(total);
    }
};

struct EvalReport {
    std::vector<CellResult> cells;  // ordered by (size_class, gamma)
    std::vector<FiletypeAccuracy> per_filetype;
    std::size_t repetitions = 0;
    std::size_t per_label = 0;
    std::uint64_t seed = 0;

    [[nodiscard]] const CellResult& cell(std::size_t size_class, double gamma) const {
        for (const auto& c : cells)
            if (c.size_class == size_class && c.gamma == gamma) return c;
        throw std::out_of_range("no cell for size " + std::to_string(size_class) + ", gamma " + std::to_string(gamma));
    }
};

struct ExperimentConfig {
    std::vector<std::size_t> sizes{kSizeClasses.begin(), kSizeClasses.end()};
    std::vector<double> gammas{0.1, 2.0};
    std::size_t repetitions = 20;
    std::size_t per_label = 200;          // 0 = as many as the scarcer label allows
    std::size_t filetype_per_group = 60;  // per (filetype, label) in the breakdown; 0 = all
    bool filetype_breakdown = true;
    TestConfig tests;
    std::size_t workers = 0;
};

/// Fraction of correctly labeled chunks per (filetype, label) at one size class. The
/// pool is every chunk of that size, stratified to at most `per_group` chunks per
/// (filetype, label); training uses 5% of the encrypted pool as usual.
[[nodiscard]] inline std::vector<FiletypeAccuracy> per_filetype_breakdown(std::span<const FeatureRow> rows,
                                                                          std::size_t size_class, double gamma,
                                                                          std::uint64_t seed) {
    const auto split = tenfold_split(rows, seed);
    const auto model = train_on(split.train, gamma);
    std::map<std::pair<FileType, bool>, FiletypeAccuracy> acc;
    for (const auto* r : split.test) {
        auto& a = acc[{r->record->filetype, r->record->encrypted()}];
        a.size_class = size_class;
        a.gamma = gamma;
        a.filetype = r->record->filetype;
        a.encrypted = r->record->encrypted();
        ++a.total;
        const bool said_encrypted = classify(r->features, model).label == Label::Encrypted;
        if (said_encrypted == a.encrypted) ++a.correct;
    }
    std::vector<FiletypeAccuracy> out;
    for (auto& [k, v] : acc) out.push_back(v);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tuple(a.encrypted ? 0 : 1, static_cast<int>(a.filetype)) <
               std::tuple(b.encrypted ? 0 : 1, static_cast<int>(b.filetype));
    });
    return out;
}

/// Seeded subset of at most `per_group` records for each (filetype, label) of one size.
[[nodiscard]] inline std::vector<ChunkRecord> stratified_sample(const DatasetManifest& manifest, std::size_t size_class,
                                                                std::size_t per_group, std::uint64_t seed) {
    std::map<std::pair<FileType, bool>, std::vector<std::pair<std::uint64_t, const ChunkRecord*>>> groups;
    for (const auto& r : manifest.records)
        if (r.size_class == size_class)
            groups[{r.filetype, r.encrypted()}].emplace_back(derive_seed(seed, string_tag(r.chunk_id)), &r);
    std::vector<ChunkRecord> out;
    for (auto& [key, members] : groups) {
        std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first < b.first : a.second->chunk_id < b.second->chunk_id;
        });
        if (per_group != 0 && members.size() > per_group) members.resize(per_group);
        for (const auto& [h, r] : members) out.push_back(*r);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.chunk_id < b.chunk_id; });
    return out;
}

[[nodiscard]] inline std::vector<FiletypeAccuracy> per_filetype_breakdown(const Dataset& ds, std::size_t size_class,
                                                                          double gamma, const TestConfig& cfg,
                                                                          std::uint64_t seed, std::size_t per_group = 0,
                                                                          std::size_t workers = 0) {
    const auto records = stratified_sample(ds.manifest, size_class, per_group, derive_seed(seed, detail::kFiletypeTag));
    FeatureCache cache(cfg, workers);
    const auto rows = cache.rows(ds, records);
    return per_filetype_breakdown(rows, size_class, gamma, derive_seed(seed, detail::kFiletypeTag, size_class));
}

[[nodiscard]] inline EvalReport run_experiment(const Dataset& ds, const ExperimentConfig& cfg, std::uint64_t seed,
                                               FeatureCache* shared_cache = nullptr) {
    if (cfg.repetitions < 1) throw std::invalid_argument("run_experiment: repetitions must be >= 1");
    if (cfg.gammas.empty() || cfg.sizes.empty()) throw std::invalid_argument("run_experiment: empty size or gamma grid");
    FeatureCache local(cfg.tests, cfg.workers);
    FeatureCache& cache = shared_cache ? *shared_cache : local;

    EvalReport report;
    report.repetitions = cfg.repetitions;
    report.per_label = cfg.per_label;
    report.seed = seed;
    for (std::size_t size : cfg.sizes) {
        std::size_t per_label = cfg.per_label;
        if (per_label == 0) {
            std::size_t enc = 0, cmp = 0;
            for (const auto& r : ds.manifest.records)
                if (r.size_class == size) ++(r.encrypted() ? enc : cmp);
            per_label = std::min(enc, cmp);
        }
        const auto sample = balance_sample(ds.manifest, per_label, size, balance_seed(seed, size));
        const auto rows = cache.rows(ds, sample.records);
        for (double gamma : cfg.gammas) {
            CellResult cell{size, gamma, {}};
            // Every gamma sees the same splits, so gamma comparisons are paired.
            for (std::size_t rep = 0; rep < cfg.repetitions; ++rep)
                cell.repetitions.push_back(inverse_tenfold_once(rows, gamma, repetition_seed(seed, size, rep)));
            report.cells.push_back(std::move(cell));
        }
        if (cfg.filetype_breakdown) {
            const auto strat = stratified_sample(ds.manifest, size, cfg.filetype_per_group,
                                                 derive_seed(seed, detail::kFiletypeTag));
            const auto strat_rows = cache.rows(ds, strat);
            for (double gamma : cfg.gammas) {
                auto part = per_filetype_breakdown(strat_rows, size, gamma, derive_seed(seed, detail::kFiletypeTag, size));
                report.per_filetype.insert(report.per_filetype.end(), part.begin(), part.end());
            }
        }
    }
    std::stable_sort(report.cells.begin(), report.cells.end(), [](const auto& a, const auto& b) {
        return std::tuple(a.size_class, a.gamma) < std::tuple(b.size_class, b.gamma);
    });
    return report;
}

// ---------------------------------------------------------------------------
// Report files

namespace detail {
inline std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}
inline std::string gamma_str(double g) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", g);
    return buf;
}
} // namespace detail

inline void write_cells_csv(std::ostream& out, const EvalReport& r) {
    out << "size_class,gamma,rep,tp,fn,fp,tn,accuracy_pct\n";
    for (const auto& c : r.cells)
        for (std::size_t i = 0; i < c.repetitions.size(); ++i) {
            const auto& k = c.repetitions[i];
            out << c.size_class << ',' << detail::gamma_str(c.gamma) << ',' << i << ',' << k.tp << ',' << k.fn << ','
                << k.fp << ',' << k.tn << ',' << detail::fixed2(k.accuracy_pct()) << '\n';
        }
}

/// Mean outcome percentages per cell; restricted to the given gammas when non-empty.
inline void write_summary_csv(std::ostream& out, const EvalReport& r, std::span<const double> gammas = {}) {
    out << "size_class,gamma,tp_pct,fn_pct,fp_pct,tn_pct,accuracy_pct,accuracy_std\n";
    for (const auto& c : r.cells) {
        if (!gammas.empty() && std::find(gammas.begin(), gammas.end(), c.gamma) == gammas.end()) continue;
        auto mean_pct = [&](std::size_t ConfusionCounts::*field) {
            double s = 0.0;
            for (const auto& k : c.repetitions) s += k.pct(k.*field);
            return s / static_cast<double>(c.repetitions.size());
        };
        out << c.size_class << ',' << detail::gamma_str(c.gamma) << ',' << detail::fixed2(mean_pct(&ConfusionCounts::tp))
            << ',' << detail::fixed2(mean_pct(&ConfusionCounts::fn)) << ','
            << detail::fixed2(mean_pct(&ConfusionCounts::fp)) << ',' << detail::fixed2(mean_pct(&ConfusionCounts::tn))
            << ',' << detail::fixed2(c.mean_accuracy()) << ',' << detail::fixed2(c.stddev_accuracy()) << '\n';
    }
}

inline void write_filetype_csv(std::ostream& out, const EvalReport& r) {
    out << "size_class,gamma,filetype,label,correct,total,accuracy_pct\n";
    for (const auto& f : r.per_filetype)
        out << f.size_class << ',' << detail::gamma_str(f.gamma) << ',' << to_string(f.filetype) << ','
            << (f.encrypted ? "Encrypted" : "Compressed") << ',' << f.correct << ',' << f.total << ','
            << detail::fixed2(f.accuracy_pct()) << '\n';
}

inline constexpr std::array<double, 2> kSummaryGammas{0.1, 2.0};

/// Writes cells.csv, summary.csv (gamma 0.1 and 2), grid.csv (every gamma) and
/// per_filetype.csv; returns the paths written.
inline std::vector<fs::path> emit_report(const EvalReport& r, const fs::path& dir) {
    fs::create_directories(dir);
    std::vector<fs::path> written;
    auto emit = [&](const char* name, auto&& body) {
        const fs::path p = dir / name;
        std::ofstream out(p, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        body(out);
        if (!out) throw std::runtime_error("failed writing " + p.string());
        written.push_back(p);
    };
    emit("cells.csv", [&](std::ostream& o) { write_cells_csv(o, r); });
    emit("summary.csv", [&](std::ostream& o) { write_summary_csv(o, r, kSummaryGammas); });
    emit("grid.csv", [&](std::ostream& o) { write_summary_csv(o, r); });
    emit("per_filetype.csv", [&](std::ostream& o) { write_filetype_csv(o, r); });
    return written;
}

} // namespace hedge

#endif // HEDGE_EVAL_HPP
