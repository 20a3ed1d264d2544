// hedge command-line front end: corpus generation, training, classification,
// capture analysis, evaluation and raw randomness diagnostics.

#include "hedge/hedge.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

enum class Format { Table, Csv };

struct TestFlags {
    double alpha = 0.01;
    std::size_t block_m = 128;
    unsigned apen_m = 2;

    [[nodiscard]] hedge::TestConfig config() const {
        hedge::TestConfig c;
        c.alpha = alpha;
        c.block_frequency_M = block_m;
        c.apen_m = apen_m;
        try {
            c.validate();
        } catch (const std::invalid_argument& e) {
            throw CLI::ValidationError("test options", e.what());
        }
        return c;
    }
};

void add_test_flags(CLI::App* cmd, TestFlags& t) {
    cmd->add_option("--alpha", t.alpha, "SP 800-22 significance level")->capture_default_str();
    cmd->add_option("--block-m", t.block_m, "block length M of the block frequency test")->capture_default_str();
    cmd->add_option("--apen-m", t.apen_m, "pattern length m of the approximate entropy test")->capture_default_str();
}

void add_format_flag(CLI::App* cmd, Format& f) {
    cmd->add_option("--format", f, "output format: table | csv (default table)")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"table", Format::Table}, {"csv", Format::Csv}},
                                            CLI::ignore_case)
                        .description(""))
        ->option_text("ENUM");
}

/// Effective configuration line on stderr; every run can be replayed from it.
class ConfigEcho {
public:
    explicit ConfigEcho(std::string_view command) { line_ << "# hedge " << command; }
    template <typename T>
    ConfigEcho& operator()(std::string_view key, const T& value) {
        line_ << ' ' << key << '=' << value;
        return *this;
    }
    ConfigEcho& tests(const hedge::TestConfig& c) {
        return (*this)("alpha", c.alpha)("block_m", c.block_frequency_M)("apen_m", c.apen_m);
    }
    ~ConfigEcho() { std::cerr << line_.str() << '\n'; }

private:
    std::ostringstream line_;
};

template <typename T>
std::string join(const std::vector<T>& v) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    return s.str();
}

std::string join_methods(const std::vector<hedge::Method>& ms) {
    std::string s;
    for (auto m : ms) s += (s.empty() ? "" : ",") + std::string(hedge::to_string(m));
    return s.empty() ? "-" : s;
}

void check_sizes(const std::vector<std::size_t>& sizes) {
    if (sizes.empty()) throw CLI::ValidationError("--sizes", "at least one size class is required");
    for (auto s : sizes)
        if (s < hedge::kMinReportBytes)
            throw CLI::ValidationError("--sizes", "size classes must be at least 1024 bytes, got " + std::to_string(s));
}

std::string fmt(double v, const char* spec = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string yes_no(bool b) { return b ? "pass" : "fail"; }

// ---------------------------------------------------------------------------

struct SynthArgs {
    fs::path out;
    std::size_t files_per_type = 2;
    std::size_t bytes_per_file = 1 << 20;
    std::uint64_t seed = 1;
};

int run_synth(const SynthArgs& a) {
    ConfigEcho("synth")("out", a.out.string())("files_per_type", a.files_per_type)("bytes_per_file", a.bytes_per_file)(
        "seed", a.seed);
    const auto written = hedge::synth::write_raw_corpus(a.out, {a.files_per_type, a.bytes_per_file}, a.seed);
    std::cout << "wrote " << written.size() << " files under " << a.out.string() << '\n';
    return 0;
}

struct GenArgs {
    fs::path raw;
    fs::path out;
    std::uint64_t seed = 1;
    std::vector<std::size_t> sizes{hedge::kSizeClasses.begin(), hedge::kSizeClasses.end()};
    std::vector<std::string> methods;
    std::string storage = "packed";
    bool drop_first_chunk = false;
    std::size_t workers = 0;
};

int run_gen(const GenArgs& a) {
    check_sizes(a.sizes);
    hedge::GeneratorConfig cfg;
    if (!a.methods.empty()) {
        cfg.methods.clear();
        for (const auto& m : a.methods) cfg.methods.push_back(hedge::parse_method(m));
    }
    cfg.sizes = a.sizes;
    cfg.storage = hedge::parse_storage(a.storage);
    cfg.drop_first_chunk = a.drop_first_chunk;
    cfg.workers = a.workers;
    ConfigEcho("gen")("raw", a.raw.string())("out", a.out.string())("seed", a.seed)("sizes", join(a.sizes))(
        "methods", join_methods(cfg.methods))("storage", hedge::to_string(cfg.storage))(
        "drop_first_chunk", a.drop_first_chunk)("workers", hedge::effective_workers(a.workers));
    const auto res = hedge::generate_dataset(a.raw, a.out, cfg, a.seed);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> counts;
    for (const auto& r : res.dataset.manifest.records) ++(r.encrypted() ? counts[r.size_class].first : counts[r.size_class].second);
    std::cout << "manifest " << (a.out / hedge::kManifestName).string() << ": " << res.dataset.manifest.records.size()
              << " chunks\n";
    for (const auto& [size, c] : counts)
        std::cout << "  size " << size << ": " << c.first << " encrypted, " << c.second << " compressed\n";
    return 0;
}

struct TrainArgs {
    fs::path manifest;
    fs::path model;
    double gamma = 1.0;
    std::vector<std::size_t> sizes;
    std::size_t max_chunks = 0;
    std::uint64_t seed = 1;
};

int run_train(const TrainArgs& a) {
    if (!(a.gamma > 0.0)) throw CLI::ValidationError("--gamma", "must be > 0");
    ConfigEcho("train")("manifest", a.manifest.string())("model", a.model.string())("gamma", a.gamma)(
        "sizes", a.sizes.empty() ? std::string("all") : join(a.sizes))("max_chunks", a.max_chunks)("seed", a.seed);
    const auto ds = hedge::open_dataset(a.manifest);
    std::vector<std::pair<std::uint64_t, const hedge::ChunkRecord*>> pool;
    for (const auto& r : ds.manifest.records) {
        if (!r.encrypted()) continue;
        if (!a.sizes.empty() && std::find(a.sizes.begin(), a.sizes.end(), r.size_class) == a.sizes.end()) continue;
        pool.emplace_back(hedge::derive_seed(a.seed, hedge::string_tag(r.chunk_id)), &r);
    }
    if (a.max_chunks != 0 && pool.size() > a.max_chunks) {
        std::sort(pool.begin(), pool.end(), [](const auto& x, const auto& y) {
            return x.first != y.first ? x.first < y.first : x.second->chunk_id < y.second->chunk_id;
        });
        pool.resize(a.max_chunks);
    }
    std::sort(pool.begin(), pool.end(), [](const auto& x, const auto& y) { return x.second->chunk_id < y.second->chunk_id; });
    hedge::ChunkReader reader(ds);
    std::vector<double> chi;
    chi.reserve(pool.size());
    for (const auto& [key, r] : pool) chi.push_back(hedge::chi_square(hedge::ByteStream::from_bytes(reader.load(*r))).statistic);
    const auto model = hedge::train_from_statistics(chi, a.gamma);
    hedge::save_model(a.model.string(), model);
    std::cout << "trained on " << model.trained_on << " encrypted chunks: chi_mean=" << fmt(model.chi_mean, "%.4f")
              << " chi_sigma=" << fmt(model.chi_sigma, "%.4f") << " window=[" << fmt(model.chi_low(), "%.2f") << ", "
              << fmt(model.chi_high(), "%.2f") << "] -> " << a.model.string() << '\n';
    return 0;
}

struct ClassifyArgs {
    fs::path model;
    std::vector<fs::path> inputs;
    fs::path manifest;
    std::vector<std::string> chunk_ids;
    std::optional<double> gamma;
    TestFlags tests;
    Format format = Format::Table;
};

int run_classify(const ClassifyArgs& a) {
    auto model = hedge::load_model(a.model.string());
    if (a.gamma) model = model.with_gamma(*a.gamma);
    const auto cfg = a.tests.config();
    ConfigEcho("classify")("model", a.model.string())("gamma", model.gamma).tests(cfg)(
        "format", a.format == Format::Csv ? "csv" : "table");
    if (a.inputs.empty() && a.chunk_ids.empty()) throw CLI::ValidationError("classify", "give input files or --chunk-id");
    if (!a.chunk_ids.empty() && a.manifest.empty()) throw CLI::ValidationError("--chunk-id", "requires --manifest");

    std::vector<std::pair<std::string, hedge::Bytes>> items;
    for (const auto& p : a.inputs) items.emplace_back(p.string(), hedge::read_file(p));
    if (!a.chunk_ids.empty()) {
        const auto ds = hedge::open_dataset(a.manifest);
        hedge::ChunkReader reader(ds);
        for (const auto& id : a.chunk_ids) {
            auto it = std::find_if(ds.manifest.records.begin(), ds.manifest.records.end(),
                                   [&](const auto& r) { return r.chunk_id == id; });
            if (it == ds.manifest.records.end()) throw std::runtime_error("chunk '" + id + "' is not in the manifest");
            items.emplace_back(id, reader.load(*it));
        }
    }
    if (a.format == Format::Csv) std::cout << "input,bytes,label,failed_check,checks_evaluated\n";
    for (const auto& [name, data] : items) {
        const auto v = hedge::classify_stream(hedge::ByteStream::from_bytes(data), model, cfg);
        const std::string failed = v.failed_check ? std::string(hedge::to_string(*v.failed_check)) : "-";
        if (a.format == Format::Csv)
            std::cout << name << ',' << data.size() << ',' << hedge::to_string(v.label) << ',' << failed << ','
                      << v.checks_evaluated << '\n';
        else
            std::cout << name << "  " << data.size() << " bytes  " << hedge::to_string(v.label)
                      << "  (failed: " << failed << ", checks: " << v.checks_evaluated << ")\n";
    }
    return 0;
}

struct PcapArgs {
    fs::path capture;
    fs::path model;
    std::optional<double> gamma;
    double probability = 1.0;
    std::size_t min_bytes = hedge::kMinReportBytes;
    std::uint64_t seed = 1;
    std::size_t workers = 0;
    TestFlags tests;
    Format format = Format::Table;
};

int run_pcap(const PcapArgs& a) {
    auto model = hedge::load_model(a.model.string());
    if (a.gamma) model = model.with_gamma(*a.gamma);
    const auto cfg = a.tests.config();
    hedge::CaptureOptions opt;
    opt.probability = a.probability;
    opt.min_bytes = a.min_bytes;
    opt.seed = a.seed;
    opt.workers = a.workers;
    ConfigEcho("pcap")("capture", a.capture.string())("model", a.model.string())("gamma", model.gamma)(
        "probability", a.probability)("min_bytes", a.min_bytes)("seed", a.seed)(
        "workers", hedge::effective_workers(a.workers))
        .tests(cfg)("format", a.format == Format::Csv ? "csv" : "table");
    const auto r = hedge::classify_capture(a.capture, model, cfg, opt);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    const char sep = a.format == Format::Csv ? ',' : '\t';
    std::string header(hedge::kVerdictColumns);
    if (sep != ',') std::replace(header.begin(), header.end(), ',', sep);
    std::cout << header << '\n';
    for (const auto& v : r.verdicts) std::cout << hedge::format_verdict(v, sep) << '\n';
    std::cerr << "# records=" << r.parse.records << " payloads=" << r.parse.emitted << " skipped=" << r.parse.skipped()
              << " (non_ip=" << r.parse.skipped_non_ip << " non_transport=" << r.parse.skipped_non_transport
              << " truncated=" << r.parse.skipped_truncated << " empty=" << r.parse.skipped_empty << ") sampled=" << r.sampled
              << " below_floor=" << r.below_floor << " encrypted=" << r.encrypted << " compressed=" << r.compressed << '\n';
    return 0;
}

struct EvalArgs {
    fs::path manifest;
    fs::path out;
    std::vector<std::size_t> sizes{hedge::kSizeClasses.begin(), hedge::kSizeClasses.end()};
    std::vector<double> gammas{0.1, 2.0};
    std::size_t repetitions = 20;
    std::size_t per_label = 200;
    std::size_t filetype_per_group = 60;
    bool no_filetype = false;
    std::uint64_t seed = 1;
    std::size_t workers = 0;
    TestFlags tests;
    Format format = Format::Table;
};

int run_eval(const EvalArgs& a) {
    check_sizes(a.sizes);
    for (double g : a.gammas)
        if (!(g > 0.0)) throw CLI::ValidationError("--gamma", "gain factors must be > 0");
    hedge::ExperimentConfig cfg;
    cfg.sizes = a.sizes;
    cfg.gammas = a.gammas;
    cfg.repetitions = a.repetitions;
    cfg.per_label = a.per_label;
    cfg.filetype_per_group = a.filetype_per_group;
    cfg.filetype_breakdown = !a.no_filetype;
    cfg.tests = a.tests.config();
    cfg.workers = a.workers;
    ConfigEcho("eval")("manifest", a.manifest.string())("out", a.out.string())("sizes", join(a.sizes))(
        "gamma", join(a.gammas))("repetitions", a.repetitions)("per_label", a.per_label)(
        "filetype_per_group", a.filetype_per_group)("filetype_breakdown", cfg.filetype_breakdown)("seed", a.seed)(
        "workers", hedge::effective_workers(a.workers))
        .tests(cfg.tests)("format", a.format == Format::Csv ? "csv" : "table");
    const auto ds = hedge::open_dataset(a.manifest);
    const auto report = hedge::run_experiment(ds, cfg, a.seed);
    if (!a.out.empty()) {
        for (const auto& p : hedge::emit_report(report, a.out)) std::cerr << "wrote " << p.string() << '\n';
    }
    if (a.format == Format::Csv) {
        hedge::write_summary_csv(std::cout, report);
    } else {
        std::cout << " size   gamma    TP%    FN%    FP%    TN%   accuracy   (std)\n";
        for (const auto& c : report.cells) {
            double tp = 0, fn = 0, fp = 0, tn = 0;
            for (const auto& k : c.repetitions) {
                tp += k.pct(k.tp);
                fn += k.pct(k.fn);
                fp += k.pct(k.fp);
                tn += k.pct(k.tn);
            }
            const double n = static_cast<double>(c.repetitions.size());
            std::printf("%5zu  %6g  %5.2f  %5.2f  %5.2f  %5.2f    %6.2f   (%.2f)\n", c.size_class, c.gamma, tp / n,
                        fn / n, fp / n, tn / n, c.mean_accuracy(), c.stddev_accuracy());
        }
        std::fflush(stdout);
    }
    return 0;
}

struct RandArgs {
    fs::path input;
    TestFlags tests;
    Format format = Format::Table;
};

int run_rand(const RandArgs& a) {
    const auto cfg = a.tests.config();
    ConfigEcho("rand")("input", a.input.string()).tests(cfg)("format", a.format == Format::Csv ? "csv" : "table");
    const auto s = hedge::ByteStream::from_bytes(hedge::read_file(a.input));
    if (s.length_bytes() < hedge::kMinReportBytes)
        std::cerr << "warning: " << s.length_bytes() << " bytes is below the 1024-byte floor; tests needing more are skipped\n";

    std::vector<std::pair<std::string, std::string>> rows;
    auto add = [&](std::string k, std::string v) { rows.emplace_back(std::move(k), std::move(v)); };
    // Each statistic is computed independently so one short-input error does not hide the rest.
    auto attempt = [&](const std::string& name, auto&& fn) {
        try {
            fn();
        } catch (const std::invalid_argument& e) {
            add(name, std::string("n/a (") + e.what() + ")");
        }
    };
    add("bytes", std::to_string(s.length_bytes()));
    attempt("entropy_bits_per_byte", [&] { add("entropy_bits_per_byte", fmt(hedge::shannon_entropy(s))); });
    attempt("mean_byte", [&] { add("mean_byte", fmt(hedge::mean_byte(s))); });
    attempt("chi_square", [&] {
        const auto c = hedge::chi_square(s);
        add("chi_square", fmt(c.statistic, "%.4f"));
        add("chi_confidence_pct", fmt(c.confidence_pct, "%.4f"));
    });
    attempt("autocorrelation_lag1", [&] { add("autocorrelation_lag1", fmt(hedge::autocorrelation(s, 1))); });
    attempt("monte_carlo_pi", [&] {
        const auto m = hedge::monte_carlo_pi(s);
        add("monte_carlo_pi", fmt(m.estimate));
        add("monte_carlo_pi_error_pct", fmt(100.0 * std::fabs(m.estimate - std::numbers::pi) / std::numbers::pi, "%.4f"));
    });
    attempt("monobit_p", [&] {
        const auto r = hedge::monobit(s, cfg);
        add("monobit_p", fmt(r.p_value, "%.6g"));
    });
    attempt("fips_140_2", [&] {
        const auto f = hedge::fips_140_2(s);
        add("fips_blocks", std::to_string(f.blocks_tested));
        add("fips_blocks_failed", std::to_string(f.blocks_failed));
        add("fips_monobit", yes_no(f.monobit_pass));
        add("fips_poker", yes_no(f.poker_pass));
        add("fips_runs", yes_no(f.runs_pass));
        add("fips_long_runs", yes_no(f.long_runs_pass));
    });
    int fails = 0;
    bool all_ran = true;
    auto sp = [&](const char* name, hedge::PValueResult (*test)(const hedge::ByteStream&, const hedge::TestConfig&)) {
        attempt(std::string(name) + "_p", [&] {
            const auto r = test(s, cfg);
            add(std::string(name) + "_p", fmt(r.p_value, "%.6g"));
            add(std::string(name) + "_result", yes_no(r.passed));
            fails += !r.passed;
        });
        if (rows.back().second.rfind("n/a", 0) == 0) all_ran = false;
    };
    sp("block_frequency", &hedge::block_frequency);
    sp("cumulative_sums", &hedge::cumulative_sums);
    sp("approximate_entropy", &hedge::approximate_entropy);
    if (all_ran) add("nist_fail_count", std::to_string(fails));

    if (a.format == Format::Csv) {
        std::cout << "statistic,value\n";
        for (const auto& [k, v] : rows) std::cout << k << ',' << v << '\n';
    } else {
        for (const auto& [k, v] : rows) std::printf("%-26s %s\n", k.c_str(), v.c_str());
        std::fflush(stdout);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hedge: tell encrypted from compressed payloads with randomness tests"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "show help for every subcommand");

    SynthArgs synth;
    auto* c_synth = app.add_subcommand("synth", "write a synthetic raw corpus (img/ pdf/ txt/ mp3/ video/ bin/)");
    c_synth->add_option("--out", synth.out, "raw corpus directory")->required();
    c_synth->add_option("--files-per-type", synth.files_per_type)->capture_default_str();
    c_synth->add_option("--bytes-per-file", synth.bytes_per_file)->capture_default_str();
    c_synth->add_option("--seed", synth.seed)->capture_default_str();

    GenArgs gen;
    auto* c_gen = app.add_subcommand("gen", "build the labeled chunk corpus from a raw directory");
    c_gen->add_option("--raw", gen.raw, "raw directory with one subdirectory per file type")->required()->check(CLI::ExistingDirectory);
    c_gen->add_option("--out", gen.out, "output dataset directory")->required();
    c_gen->add_option("--seed", gen.seed, "key and nonce derivation seed")->capture_default_str();
    c_gen->add_option("--sizes", gen.sizes, "chunk size classes in bytes")->delimiter(',')->capture_default_str();
    c_gen->add_option("--methods", gen.methods, "transform methods (default: all ten)")->delimiter(',');
    c_gen->add_option("--storage", gen.storage, "packed | per-chunk")->check(CLI::IsMember({"packed", "per-chunk"}))->capture_default_str();
    c_gen->add_flag("--drop-first-chunk", gen.drop_first_chunk, "omit chunk 0 of every variant");
    c_gen->add_option("--workers", gen.workers, "parallel workers (0 = all cores)")->capture_default_str();

    TrainArgs train;
    auto* c_train = app.add_subcommand("train", "fit the chi-square window on a manifest's encrypted chunks");
    c_train->add_option("--manifest", train.manifest, "dataset directory or manifest file")->required();
    c_train->add_option("--model", train.model, "model file to write")->required();
    c_train->add_option("--gamma", train.gamma, "gain factor stored in the model")->capture_default_str();
    c_train->add_option("--sizes", train.sizes, "restrict to these size classes")->delimiter(',');
    c_train->add_option("--max-chunks", train.max_chunks, "seeded subset size (0 = all)")->capture_default_str();
    c_train->add_option("--seed", train.seed)->capture_default_str();

    ClassifyArgs cls;
    auto* c_cls = app.add_subcommand("classify", "label files or manifest chunks as Encrypted or Compressed");
    c_cls->add_option("--model", cls.model, "model file")->required()->check(CLI::ExistingFile);
    c_cls->add_option("inputs", cls.inputs, "files to classify, each as one payload")->check(CLI::ExistingFile);
    c_cls->add_option("--manifest", cls.manifest, "dataset for --chunk-id");
    c_cls->add_option("--chunk-id", cls.chunk_ids, "chunk ids from the manifest");
    c_cls->add_option("--gamma", cls.gamma, "override the model's gain factor");
    add_test_flags(c_cls, cls.tests);
    add_format_flag(c_cls, cls.format);

    PcapArgs pcap;
    auto* c_pcap = app.add_subcommand("pcap", "classify sampled packet payloads of a capture file");
    c_pcap->add_option("capture", pcap.capture, "classic pcap file (Ethernet)")->required()->check(CLI::ExistingFile);
    c_pcap->add_option("--model", pcap.model, "model file")->required()->check(CLI::ExistingFile);
    c_pcap->add_option("--gamma", pcap.gamma, "override the model's gain factor");
    c_pcap->add_option("--probability", pcap.probability, "per-packet sampling probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    c_pcap->add_option("--min-bytes", pcap.min_bytes, "smallest payload considered")->capture_default_str();
    c_pcap->add_option("--seed", pcap.seed, "sampling seed")->capture_default_str();
    c_pcap->add_option("--workers", pcap.workers, "parallel workers (0 = all cores)")->capture_default_str();
    add_test_flags(c_pcap, pcap.tests);
    add_format_flag(c_pcap, pcap.format);

    EvalArgs ev;
    auto* c_eval = app.add_subcommand("eval", "inverse 10-fold experiment over a dataset");
    c_eval->add_option("--manifest", ev.manifest, "dataset directory or manifest file")->required();
    c_eval->add_option("--out", ev.out, "directory for the report tables");
    c_eval->add_option("--sizes", ev.sizes, "size classes")->delimiter(',')->capture_default_str();
    c_eval->add_option("--gamma", ev.gammas, "gain factors")->delimiter(',')->capture_default_str();
    c_eval->add_option("--repetitions", ev.repetitions)->check(CLI::PositiveNumber)->capture_default_str();
    c_eval->add_option("--per-label", ev.per_label, "chunks per label per size (0 = max balanced)")->capture_default_str();
    c_eval->add_option("--filetype-per-group", ev.filetype_per_group, "cap per (filetype, label) in the breakdown")
        ->capture_default_str();
    c_eval->add_flag("--no-filetype", ev.no_filetype, "skip the per-filetype breakdown");
    c_eval->add_option("--seed", ev.seed)->capture_default_str();
    c_eval->add_option("--workers", ev.workers, "parallel workers (0 = all cores)")->capture_default_str();
    add_test_flags(c_eval, ev.tests);
    add_format_flag(c_eval, ev.format);

    RandArgs rnd;
    auto* c_rand = app.add_subcommand("rand", "print every randomness statistic for one file");
    c_rand->add_option("input", rnd.input, "file to analyse")->required()->check(CLI::ExistingFile);
    add_test_flags(c_rand, rnd.tests);
    add_format_flag(c_rand, rnd.format);

    if (argc <= 1) {
        std::cerr << app.help();
        return 1;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*c_synth) return run_synth(synth);
        if (*c_gen) return run_gen(gen);
        if (*c_train) return run_train(train);
        if (*c_cls) return run_classify(cls);
        if (*c_pcap) return run_pcap(pcap);
        if (*c_eval) return run_eval(ev);
        if (*c_rand) return run_rand(rnd);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
