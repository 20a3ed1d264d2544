// Acceptance run: builds a desk-scale synthetic corpus, runs the full protocol and
// prints one PASS/FAIL line per criterion with the measured values. Exit status is
// non-zero when any criterion fails.

#include "hedge/hedge.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Desk-scale corpus: 3 files of 1.5 MB per category.
constexpr std::uint64_t kSeed = 20'240'617;
constexpr std::size_t kFilesPerType = 3;
constexpr std::size_t kBytesPerFile = 3 << 19;

// Tolerances
constexpr double kChiMeanLo = 252.0, kChiMeanHi = 258.0;
constexpr double kChiSigmaLo = 19.5, kChiSigmaHi = 25.5;
constexpr double kTrainSecondsPerSize = 120.0;
constexpr double kAcc64Gamma2Lo = 89.7, kAcc64Gamma2Hi = 99.7;
constexpr double kAcc1Gamma2Lo = 63.7, kAcc1Gamma2Hi = 73.7;
constexpr double kAcc64Gamma01Lo = 71.0, kAcc64Gamma01Hi = 81.0;
constexpr double kGridSeconds = 30.0 * 60.0;
constexpr double kTpRateLo = 0.90, kTpRateHi = 0.97, kTpSpread = 0.03;
constexpr double kSeparableTn = 0.95;
constexpr double kOracleRel = 1e-9;
constexpr double kSpecialTol = 1e-10;
constexpr double kCaptureCorrect = 0.90;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string f(double v, int prec = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

std::string g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Shared state built once: corpus, dataset and the protocol run.
struct World {
    fs::path work;
    hedge::Dataset ds;
    std::vector<std::string> gen_warnings;
    hedge::EvalReport report;
    double grid_seconds = 0.0;
    std::map<std::size_t, hedge::ThresholdModel> trained;  // criterion 1 models, gamma 1
    std::map<std::size_t, double> train_seconds;
    std::map<std::size_t, std::size_t> train_counts;
};

std::vector<const hedge::ChunkRecord*> seeded_subset(const std::vector<const hedge::ChunkRecord*>& pool, std::size_t n,
                                                     std::uint64_t seed) {
    std::vector<std::pair<std::uint64_t, const hedge::ChunkRecord*>> keyed;
    for (const auto* r : pool) keyed.emplace_back(hedge::derive_seed(seed, hedge::string_tag(r->chunk_id)), r);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second->chunk_id < b.second->chunk_id;
    });
    if (keyed.size() > n) keyed.resize(n);
    std::vector<const hedge::ChunkRecord*> out;
    for (const auto& [k, r] : keyed) out.push_back(r);
    return out;
}

bool is_aes(hedge::Method m) {
    return m == hedge::Method::AES128 || m == hedge::Method::AES192 || m == hedge::Method::AES256;
}

// ---------------------------------------------------------------------------
// Criteria

Outcome threshold_moments(World& w) {
    // 500 AES-CTR chunks per size drawn across all six file types.
    constexpr std::size_t kTrain = 500;
    Outcome o{true, {}};
    for (std::size_t size : hedge::kSizeClasses) {
        const auto t0 = Clock::now();
        std::vector<const hedge::ChunkRecord*> pool;
        for (const auto& r : w.ds.manifest.records)
            if (r.size_class == size && is_aes(r.transform.method)) pool.push_back(&r);
        const auto chosen = seeded_subset(pool, kTrain, hedge::derive_seed(kSeed, 1, size));
        hedge::ChunkReader reader(w.ds);
        const auto chi = hedge::parallel_map(chosen.size(), 1, [&](std::size_t i) {
            return hedge::chi_square(hedge::ByteStream::from_bytes(reader.load(*chosen[i]))).statistic;
        });
        const auto m = hedge::train_from_statistics(chi, 1.0);
        const double secs = seconds_since(t0);
        w.trained[size] = m;
        w.train_seconds[size] = secs;
        w.train_counts[size] = chosen.size();
        const bool ok = chosen.size() >= kTrain && m.chi_mean >= kChiMeanLo && m.chi_mean <= kChiMeanHi &&
                        m.chi_sigma >= kChiSigmaLo && m.chi_sigma <= kChiSigmaHi && secs <= kTrainSecondsPerSize;
        o.pass = o.pass && ok;
        o.detail += " " + std::to_string(size / 1024) + "K:" + f(m.chi_mean) + "/" + f(m.chi_sigma) + "(n=" +
                    std::to_string(chosen.size()) + "," + f(secs, 1) + "s)";
    }
    o.detail = "mean in [252,258], sigma in [19.5,25.5]:" + o.detail;
    return o;
}

Outcome accuracy_grid(const World& w) {
    const double a64 = w.report.cell(65536, 2.0).mean_accuracy();
    const double a1 = w.report.cell(1024, 2.0).mean_accuracy();
    const double a64_low = w.report.cell(65536, 0.1).mean_accuracy();
    const bool ok64 = a64 >= kAcc64Gamma2Lo && a64 <= kAcc64Gamma2Hi;
    const bool ok1 = a1 >= kAcc1Gamma2Lo && a1 <= kAcc1Gamma2Hi;
    const bool ok64_low = a64_low >= kAcc64Gamma01Lo && a64_low <= kAcc64Gamma01Hi;
    const bool ok_time = w.grid_seconds <= kGridSeconds;
    return {ok64 && ok1 && ok64_low && ok_time,
            "g=2 64K " + f(a64) + (ok64 ? " ok" : " OUT") + " [89.7,99.7]; g=2 1K " + f(a1) + (ok1 ? " ok" : " OUT") +
                " [63.7,73.7]; g=0.1 64K " + f(a64_low) + (ok64_low ? " ok" : " OUT") + " [71,81]; runtime " +
                f(w.grid_seconds, 0) + "s"};
}

Outcome size_monotonicity(const World& w) {
    std::vector<double> acc;
    for (std::size_t size : hedge::kSizeClasses) acc.push_back(w.report.cell(size, 2.0).mean_accuracy());
    int strict = 0;
    bool non_decreasing = true;
    std::string seq;
    for (std::size_t i = 0; i < acc.size(); ++i) {
        seq += (i ? " " : "") + f(acc[i]);
        if (i == 0) continue;
        non_decreasing = non_decreasing && acc[i] >= acc[i - 1];
        strict += acc[i] > acc[i - 1];
    }
    return {non_decreasing && strict >= 5, "g=2 accuracy 1K..64K: " + seq + "; strict steps " + std::to_string(strict) + "/6"};
}

Outcome encrypted_stability(const World& w) {
    double lo = 1.0, hi = 0.0;
    bool in_band = true;
    std::string seq;
    for (std::size_t size : hedge::kSizeClasses) {
        const double tp = w.report.cell(size, 2.0).mean_tp_rate();
        lo = std::min(lo, tp);
        hi = std::max(hi, tp);
        in_band = in_band && tp >= kTpRateLo && tp <= kTpRateHi;
        seq += (seq.empty() ? "" : " ") + f(tp, 3);
    }
    return {in_band && hi - lo <= kTpSpread,
            "g=2 TP rate 1K..64K: " + seq + " (band [0.90,0.97]); spread " + f(hi - lo, 3) + " (<= 0.03)"};
}

/// Not a criterion: TP rate when the window is trained on 500 chunks instead of the
/// protocol's 5% share, to separate estimator noise from the classifier itself.
std::string large_training_tp(const World& w) {
    std::string out;
    for (std::size_t size : {std::size_t{1024}, std::size_t{65536}}) {
        const auto model = w.trained.at(size).with_gamma(2.0);
        std::vector<const hedge::ChunkRecord*> pool;
        for (const auto& r : w.ds.manifest.records)
            if (r.size_class == size && r.encrypted() && !is_aes(r.transform.method)) pool.push_back(&r);
        const auto test = seeded_subset(pool, 1000, hedge::derive_seed(kSeed, 4, size));
        hedge::ChunkReader reader(w.ds);
        std::size_t tp = 0;
        for (const auto* r : test)
            tp += hedge::classify_stream(hedge::ByteStream::from_bytes(reader.load(*r)), model).label == hedge::Label::Encrypted;
        out += (out.empty() ? "" : ", ") + std::to_string(size / 1024) + "K " +
               f(static_cast<double>(tp) / static_cast<double>(test.size()), 3) + " (n=" + std::to_string(test.size()) + ")";
    }
    return "TP rate with a 500-chunk trained window, g=2, Camellia test chunks: " + out;
}

/// Not a criterion: the same protocol with 800 chunks per label, so each repetition
/// trains on 40 chunks instead of 10.
std::string larger_sample_grid(const World& w) {
    hedge::ExperimentConfig cfg;
    cfg.gammas = {2.0};
    cfg.per_label = 800;
    cfg.filetype_breakdown = false;
    const auto r = hedge::run_experiment(w.ds, cfg, kSeed);
    std::string acc, tp;
    for (std::size_t size : hedge::kSizeClasses) {
        acc += (acc.empty() ? "" : " ") + f(r.cell(size, 2.0).mean_accuracy());
        tp += (tp.empty() ? "" : " ") + f(r.cell(size, 2.0).mean_tp_rate(), 3);
    }
    return "800 chunks/label, g=2, accuracy 1K..64K: " + acc + "; TP rate: " + tp;
}

Outcome gamma_monotonicity(const World& w) {
    bool grid_ok = true;
    std::string seq;
    for (std::size_t size : hedge::kSizeClasses) {
        const double hi = w.report.cell(size, 2.0).mean_accuracy();
        const double lo = w.report.cell(size, 0.1).mean_accuracy();
        grid_ok = grid_ok && hi > lo;
        seq += (seq.empty() ? "" : " ") + std::to_string(size / 1024) + "K:" + f(hi - lo, 1);
    }
    std::mt19937_64 rng(hedge::derive_seed(kSeed, 5));
    std::uniform_real_distribution<double> chi(100.0, 420.0), conf(0.0, 100.0), gain(0.01, 6.0), mean(240.0, 270.0),
        sigma(5.0, 40.0);
    std::uniform_int_distribution<int> fails(0, 3);
    std::size_t violations = 0;
    for (int i = 0; i < 10'000; ++i) {
        hedge::ThresholdModel m;
        m.chi_mean = mean(rng);
        m.chi_sigma = sigma(rng);
        const hedge::FeatureVector fv{chi(rng), conf(rng), fails(rng)};
        double g1 = gain(rng), g2 = gain(rng);
        if (g1 > g2) std::swap(g1, g2);
        if (hedge::classify(fv, m.with_gamma(g1)).label == hedge::Label::Encrypted &&
            hedge::classify(fv, m.with_gamma(g2)).label != hedge::Label::Encrypted)
            ++violations;
    }
    return {grid_ok && violations == 0, "acc(g=2)-acc(g=0.1): " + seq + "; pointwise violations " +
                                            std::to_string(violations) + "/10000"};
}

Outcome filetype_separability(const World& w) {
    std::map<hedge::FileType, double> tn;
    for (const auto& a : w.report.per_filetype)
        if (a.size_class == 65536 && a.gamma == 2.0 && !a.encrypted) tn[a.filetype] = a.accuracy_pct() / 100.0;
    if (!tn.contains(hedge::FileType::TXT) || !tn.contains(hedge::FileType::BIN) || !tn.contains(hedge::FileType::MP3))
        return {false, "per-filetype rows missing at 64K"};
    const double txt = tn[hedge::FileType::TXT], bin = tn[hedge::FileType::BIN], mp3 = tn[hedge::FileType::MP3];
    std::string all;
    for (const auto& [t, v] : tn) all += (all.empty() ? "" : " ") + std::string(hedge::to_string(t)) + ":" + f(v, 3);
    return {txt >= kSeparableTn && bin >= kSeparableTn && txt >= mp3 && bin >= mp3,
            "64K g=2 compressed TN " + all + " (TXT,BIN >= 0.95 and >= MP3)"};
}

/// Relative error with exact zeros allowed on both sides.
double rel_err(double got, double want) {
    if (got == want) return 0.0;
    return std::fabs(got - want) / std::max(std::fabs(want), std::numeric_limits<double>::min());
}

Outcome oracle_equivalence() {
    struct Worst {
        double err = 0.0;
        std::size_t checks = 0;
    };
    std::map<std::string, Worst> worst;
    auto note = [&](const std::string& name, double err) {
        auto& wv = worst[name];
        wv.err = std::max(wv.err, err);
        ++wv.checks;
    };
    for (std::uint64_t i = 0; i < 100; ++i) {
        const std::uint64_t seed = hedge::derive_seed(kSeed, 7, i);
        // Uniform, slightly biased and text-like streams of varying length.
        const std::size_t n = 1024 + 512 * (i % 13);
        std::vector<std::uint8_t> data;
        switch (i % 4) {
            case 0: data = fixture::random_bytes(seed, n); break;
            case 1: data = fixture::biased_bytes(seed, n, 0.49 + 0.0025 * static_cast<double>(i % 9)); break;
            case 2: data = fixture::encrypted_chunk(seed, n); break;
            default: data = fixture::text_bytes(seed, n); break;
        }
        const auto s = hedge::ByteStream::from_bytes(data);
        const auto chi = hedge::chi_square(s);
        const auto chi_ref = oracle::chi_square(data);
        note("chi_square", std::max(rel_err(chi.statistic, chi_ref.statistic), rel_err(chi.confidence_pct, chi_ref.confidence_pct)));
        note("block_frequency", rel_err(hedge::block_frequency(s).p_value, oracle::block_frequency_p(data, 128)));
        note("cumulative_sums", rel_err(hedge::cumulative_sums(s).p_value, oracle::cumulative_sums_p(data)));
        note("approximate_entropy", rel_err(hedge::approximate_entropy(s).p_value, oracle::approximate_entropy_p(data, 2)));
        note("monobit", rel_err(hedge::monobit(s).p_value, oracle::monobit_p(data)));
        note("autocorrelation", rel_err(hedge::autocorrelation(s, 1 + i % 3), oracle::autocorrelation(data, 1 + i % 3)));
        note("shannon_entropy", rel_err(hedge::shannon_entropy(s), oracle::shannon_entropy(data)));
        note("monte_carlo_pi", hedge::monte_carlo_pi(s).estimate == oracle::monte_carlo_pi(data) ? 0.0 : 1.0);
        note("mean_byte", rel_err(hedge::mean_byte(s), oracle::mean_byte(data)));

        // FIPS tests work on exact 20,000-bit blocks; integer counts must match exactly.
        const auto block_bytes = i % 4 == 3 ? fixture::text_bytes(seed, 2500) : fixture::biased_bytes(seed, 2500, 0.5 + 0.001 * static_cast<double>(i % 5));
        const auto bs = hedge::ByteStream::from_bytes(block_bytes);
        const auto bits = oracle::to_bits(block_bytes);
        note("poker", rel_err(hedge::poker(hedge::bits(bs)).statistic, oracle::poker_x(bits)));
        const auto runs = hedge::runs(hedge::bits(bs));
        const auto runs_ref = oracle::runs(bits);
        note("runs", runs.zeros == runs_ref.zeros && runs.ones == runs_ref.ones ? 0.0 : 1.0);
        note("long_runs", hedge::long_runs(hedge::bits(bs)).max_run == runs_ref.longest ? 0.0 : 1.0);
    }
    bool ok = true;
    std::string detail;
    for (const auto& [name, wv] : worst) {
        const bool exact = name == "runs" || name == "long_runs" || name == "monte_carlo_pi";
        const bool pass = wv.checks == 100 && (exact ? wv.err == 0.0 : wv.err <= kOracleRel);
        ok = ok && pass;
        if (!pass) detail += " " + name + "=" + g(wv.err);
    }

    // Special functions at 1000 sampled points.
    std::mt19937_64 rng(hedge::derive_seed(kSeed, 8));
    double worst_gamma = 0.0, worst_erfc = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double a = std::exp(std::uniform_real_distribution<double>(std::log(0.1), std::log(2500.0))(rng));
        const double x = a * std::uniform_real_distribution<double>(0.05, 3.0)(rng);
        const double p = oracle::gamma_p(a, x), q = oracle::gamma_q(a, x);
        worst_gamma = std::max({worst_gamma, std::fabs(hedge::special::gamma_p(a, x) - p),
                                std::fabs(hedge::special::gamma_q(a, x) - q)});
        const double z = std::uniform_real_distribution<double>(-6.0, 26.0)(rng);
        worst_erfc = std::max(worst_erfc, rel_err(hedge::special::erfc(z), oracle::erfc(z)));
    }
    const bool special_ok = worst_gamma <= kSpecialTol && worst_erfc <= kSpecialTol;
    std::string max_stream;
    double m = 0.0;
    for (const auto& [name, wv] : worst)
        if (wv.err >= m) {
            m = wv.err;
            max_stream = name;
        }
    return {ok && special_ok, "12 functions x 100 streams, worst rel err " + g(m) + " (" + max_stream + ")" +
                                  (detail.empty() ? "" : "; over tolerance:" + detail) + "; P/Q abs err " +
                                  g(worst_gamma) + ", erfc rel err " + g(worst_erfc) + " on 1000 points"};
}

Outcome short_circuit(const World& w) {
    const auto model = w.trained.at(65536).with_gamma(2.0);
    std::uint64_t calls = 0;
    for (std::size_t size : hedge::kSizeClasses) {
        const auto before = hedge::instrumentation::sp800_22_calls;
        const auto v = hedge::classify_stream(hedge::ByteStream::from_bytes(std::vector<std::uint8_t>(size, 0)), model);
        calls += hedge::instrumentation::sp800_22_calls - before;
        if (v.label != hedge::Label::Compressed) return {false, "all-zero payload labeled Encrypted"};
    }
    // 1000 mixed chunks: every size class, both labels, every transform.
    std::vector<const hedge::ChunkRecord*> pool;
    for (const auto& r : w.ds.manifest.records) pool.push_back(&r);
    const auto chosen = seeded_subset(pool, 1000, hedge::derive_seed(kSeed, 9));
    hedge::ChunkReader reader(w.ds);
    std::size_t mismatches = 0, encrypted_verdicts = 0;
    for (const auto* r : chosen) {
        const auto s = hedge::ByteStream::from_bytes(reader.load(*r));
        const auto lazy = hedge::classify_stream(s, model);
        const auto eager = hedge::classify(hedge::extract_features(hedge::run_all(s)), model);
        mismatches += !(lazy == eager);
        encrypted_verdicts += lazy.label == hedge::Label::Encrypted;
    }
    return {calls == 0 && mismatches == 0 && chosen.size() == 1000,
            "SP 800-22 calls on all-zero payloads: " + std::to_string(calls) + "; lazy/eager mismatches " +
                std::to_string(mismatches) + "/" + std::to_string(chosen.size()) + " (" + std::to_string(encrypted_verdicts) +
                " Encrypted verdicts)"};
}

Outcome capture_round_trip(const World& w) {
    // Byte-level fixture: pcap header, one record, Ethernet/IPv4/UDP with DE AD BE EF.
    const hedge::Bytes fixture_file{
        0xD4, 0xC3, 0xB2, 0xA1, 0x02, 0x00, 0x04, 0x00, 0, 0, 0, 0, 0, 0, 0, 0, 0xFF, 0xFF, 0, 0, 0x01, 0, 0, 0,
        0x01, 0, 0, 0, 0x02, 0, 0, 0, 46, 0, 0, 0, 46, 0, 0, 0,
        0x00, 0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x77, 0x88, 0x99, 0xAA, 0xBB, 0x08, 0x00,
        0x45, 0x00, 0x00, 0x20, 0x00, 0x01, 0x00, 0x00, 0x40, 0x11, 0x00, 0x00, 10, 0, 0, 1, 10, 0, 0, 2,
        0x30, 0x39, 0x00, 0x35, 0x00, 0x0C, 0x00, 0x00, 0xDE, 0xAD, 0xBE, 0xEF};
    const auto parsed = hedge::parse_capture(fixture_file);
    const bool fixture_ok = parsed.payloads.size() == 1 &&
                            std::vector<std::uint8_t>(parsed.payloads[0].payload.bytes().begin(),
                                                      parsed.payloads[0].payload.bytes().end()) ==
                                std::vector<std::uint8_t>{0xDE, 0xAD, 0xBE, 0xEF};

    // 100 packets, half encrypted and half compressed 64 KB chunks from the corpus
    // (jumbo/reassembled payloads).
    std::vector<const hedge::ChunkRecord*> enc, cmp;
    for (const auto& r : w.ds.manifest.records)
        if (r.size_class == 65536) (r.encrypted() ? enc : cmp).push_back(&r);
    auto picked = seeded_subset(enc, 50, hedge::derive_seed(kSeed, 10));
    for (const auto* r : seeded_subset(cmp, 50, hedge::derive_seed(kSeed, 11))) picked.push_back(r);
    std::shuffle(picked.begin(), picked.end(), std::mt19937_64(hedge::derive_seed(kSeed, 12)));
    hedge::ChunkReader reader(w.ds);
    std::vector<hedge::CapturedPayload> packets;
    for (std::size_t i = 0; i < picked.size(); ++i) {
        hedge::CapturedPayload p;
        p.packet_index = i;
        p.ts_sec = 1'700'000'000 + static_cast<std::uint32_t>(i);
        p.transport = i % 3 ? hedge::Transport::TCP : hedge::Transport::UDP;
        p.src = hedge::IpAddress::v4(10, 1, 0, 1);
        p.dst = hedge::IpAddress::v4(10, 1, 0, 2);
        p.src_port = static_cast<std::uint16_t>(50000 + i);
        p.dst_port = 443;
        p.payload = hedge::ByteStream::from_bytes(reader.load(*picked[i]));
        packets.push_back(std::move(p));
    }
    const fs::path pcap = w.work / "synthetic.pcap";
    hedge::CaptureWriter writer;
    for (const auto& p : packets) writer.add(p);
    writer.save(pcap);
    const bool round_trip = hedge::parse_capture(pcap).payloads == packets;

    const auto model = w.trained.at(65536).with_gamma(2.0);
    hedge::CaptureOptions opt;
    opt.seed = kSeed;
    opt.workers = 0;
    const auto a = hedge::classify_capture(pcap, model, {}, opt);
    opt.workers = 1;
    const auto b = hedge::classify_capture(pcap, model, {}, opt);
    bool deterministic = a.verdicts.size() == b.verdicts.size();
    for (std::size_t i = 0; deterministic && i < a.verdicts.size(); ++i)
        deterministic = a.verdicts[i].verdict == b.verdicts[i].verdict &&
                        a.verdicts[i].packet.packet_index == b.verdicts[i].packet.packet_index;
    std::size_t correct = 0;
    for (const auto& v : a.verdicts)
        correct += (v.verdict.label == hedge::Label::Encrypted) == picked[v.packet.packet_index]->encrypted();
    const double rate = a.verdicts.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(a.verdicts.size());
    return {fixture_ok && round_trip && deterministic && a.verdicts.size() == 100 && rate >= kCaptureCorrect,
            std::string("UDP fixture ") + (fixture_ok ? "exact" : "WRONG") + "; 100-packet round trip " +
                (round_trip ? "exact" : "DIFFERS") + "; verdicts " + (deterministic ? "deterministic" : "DIFFER") +
                "; correct " + std::to_string(correct) + "/" + std::to_string(a.verdicts.size()) + " (>= 90%)"};
}

Outcome end_to_end(const World& w) {
    // Reduced grid keeps the double run short; the pipeline is the same.
    auto pipeline = [&](const fs::path& dir) {
        fs::remove_all(dir);
        hedge::GeneratorConfig gen;
        gen.sizes = {1024, 65536};
        const auto ds = hedge::generate_dataset(w.work / "raw", dir / "dataset", gen, kSeed).dataset;
        std::vector<double> chi;
        hedge::ChunkReader reader(ds);
        for (const auto& r : ds.manifest.records)
            if (r.encrypted() && r.size_class == 65536)
                chi.push_back(hedge::chi_square(hedge::ByteStream::from_bytes(reader.load(r))).statistic);
        hedge::save_model((dir / "model.txt").string(), hedge::train_from_statistics(chi, 2.0));
        hedge::ExperimentConfig cfg;
        cfg.sizes = gen.sizes;
        cfg.repetitions = 5;
        cfg.per_label = 100;
        (void)hedge::emit_report(hedge::run_experiment(ds, cfg, kSeed), dir / "report");
    };
    const fs::path a = w.work / "e2e_a", b = w.work / "e2e_b";
    pipeline(a);
    pipeline(b);
    std::vector<fs::path> files{"dataset/manifest.tsv", "dataset/chunks.bin", "model.txt"};
    for (const char* r : {"cells.csv", "summary.csv", "grid.csv", "per_filetype.csv"}) files.push_back(fs::path("report") / r);
    std::string differing;
    for (const auto& rel : files)
        if (slurp(a / rel) != slurp(b / rel) || slurp(a / rel).empty()) differing += " " + rel.generic_string();
    return {differing.empty(), differing.empty() ? "manifest, chunk store, model and 4 report files byte-identical"
                                                 : "differing:" + differing};
}

// ---------------------------------------------------------------------------

void build_world(World& w) {
    const auto t0 = Clock::now();
    const fs::path raw = w.work / "raw";
    fs::remove_all(raw);
    (void)hedge::synth::write_raw_corpus(raw, {kFilesPerType, kBytesPerFile}, kSeed);
    std::cout << "[INFO] synthetic raw corpus: 6 types x " << kFilesPerType << " files x " << kBytesPerFile
              << " bytes in " << f(seconds_since(t0), 1) << "s" << std::endl;

    const auto t1 = Clock::now();
    fs::remove_all(w.work / "dataset");
    auto gen = hedge::generate_dataset(raw, w.work / "dataset", {}, kSeed);
    w.ds = std::move(gen.dataset);
    w.gen_warnings = std::move(gen.warnings);
    for (const auto& msg : w.gen_warnings) std::cout << "[INFO] generator warning: " << msg << std::endl;
    std::cout << "[INFO] dataset: " << w.ds.manifest.records.size() << " chunks, methods "
              << hedge::detail::join_methods(w.ds.manifest.config.methods) << " in " << f(seconds_since(t1), 1) << "s"
              << std::endl;
    for (std::size_t size : hedge::kSizeClasses) {
        std::size_t e = 0, c = 0;
        for (const auto& r : w.ds.manifest.records)
            if (r.size_class == size) ++(r.encrypted() ? e : c);
        std::cout << "[INFO]   " << size << " B: " << e << " encrypted, " << c << " compressed" << std::endl;
    }

    const auto t2 = Clock::now();
    hedge::ExperimentConfig cfg;  // 200 per label, 20 repetitions, gamma {0.1, 2}
    w.report = hedge::run_experiment(w.ds, cfg, kSeed);
    w.grid_seconds = seconds_since(t2);
    std::cout << "[INFO] protocol run: " << cfg.per_label << " chunks/label/size, " << cfg.repetitions
              << " repetitions, " << f(w.grid_seconds, 1) << "s" << std::endl;
    for (const auto& c : w.report.cells)
        std::cout << "[INFO]   size " << c.size_class << " gamma " << c.gamma << ": accuracy " << f(c.mean_accuracy())
                  << " +- " << f(c.stddev_accuracy()) << ", TP rate " << f(c.mean_tp_rate(), 3) << ", TN rate "
                  << f(c.mean_tn_rate(), 3) << std::endl;
    (void)hedge::emit_report(w.report, w.work / "report");
}

} // namespace

int main(int argc, char** argv) {
    fs::path work = fs::current_path() / "acceptance_work";
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--work-dir") work = argv[i + 1];
    fs::create_directories(work);

    World w;
    w.work = work;
    try {
        build_world(w);
    } catch (const std::exception& e) {
        std::cout << "[FAIL] setup: " << e.what() << std::endl;
        return 1;
    }

    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"C1 threshold moments", [&] { return threshold_moments(w); }},
        {"C2 accuracy grid", [&] { return accuracy_grid(w); }},
        {"C3 size monotonicity", [&] { return size_monotonicity(w); }},
        {"C4 encrypted-side stability", [&] { return encrypted_stability(w); }},
        {"C5 gamma monotonicity", [&] { return gamma_monotonicity(w); }},
        {"C6 filetype separability", [&] { return filetype_separability(w); }},
        {"C7 oracle equivalence", [&] { return oracle_equivalence(); }},
        {"C8 short-circuit contract", [&] { return short_circuit(w); }},
        {"C9 capture round trip", [&] { return capture_round_trip(w); }},
        {"C10 end-to-end determinism", [&] { return end_to_end(w); }},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << o.detail << std::endl;
        if (std::string(c.name).starts_with("C4")) {
            try {
                std::cout << "[INFO] " << large_training_tp(w) << std::endl;
            } catch (const std::exception& e) {
                std::cout << "[INFO] large-training TP unavailable: " << e.what() << std::endl;
            }
            try {
                std::cout << "[INFO] " << larger_sample_grid(w) << std::endl;
            } catch (const std::exception& e) {
                std::cout << "[INFO] larger-sample grid unavailable: " << e.what() << std::endl;
            }
        }
    }
    std::cout << (failed == 0 ? "ALL CRITERIA PASSED" : std::to_string(failed) + " of 10 criteria FAILED") << std::endl;
    return failed == 0 ? 0 : 1;
}
