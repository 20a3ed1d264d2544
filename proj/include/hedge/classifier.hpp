// hedge - encrypted vs. compressed payload classification
// Threshold classifier: feature projection, training on encrypted samples and the
// short-circuit decision chain (chi-square window, confidence band, SP 800-22 fails).

#ifndef HEDGE_CLASSIFIER_HPP
#define HEDGE_CLASSIFIER_HPP

#include "hedge/randtests.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hedge {

struct FeatureVector {
    double chi_abs = 0.0;
    double chi_conf_pct = 0.0;
    int nist_fails = 0;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Trained decision parameters. Only the chi-square window scales with gamma.
struct ThresholdModel {
    double chi_mean = 0.0;
    double chi_sigma = 0.0;
    double gamma = 1.0;
    double conf_low_pct = 1.0;
    double conf_high_pct = 99.0;
    int max_nist_fails = 0;
    std::size_t trained_on = 0;

    void validate() const {
        if (!(conf_low_pct < conf_high_pct))
            throw std::invalid_argument("ThresholdModel: conf_low_pct must be below conf_high_pct");
        if (!(chi_sigma >= 0.0)) throw std::invalid_argument("ThresholdModel: chi_sigma must be >= 0");
        if (!(gamma > 0.0)) throw std::invalid_argument("ThresholdModel: gamma must be > 0");
        if (max_nist_fails < 0) throw std::invalid_argument("ThresholdModel: max_nist_fails must be >= 0");
    }

    [[nodiscard]] ThresholdModel with_gamma(double g) const {
        ThresholdModel m = *this;
        m.gamma = g;
        m.validate();
        return m;
    }

    [[nodiscard]] double chi_low() const noexcept { return chi_mean - gamma * chi_sigma; }
    [[nodiscard]] double chi_high() const noexcept { return chi_mean + gamma * chi_sigma; }

    friend bool operator==(const ThresholdModel&, const ThresholdModel&) = default;
};

enum class Label { Encrypted, Compressed };
enum class Check { ChiAbs, ChiConf, NistFails };

struct Verdict {
    Label label = Label::Compressed;
    std::optional<Check> failed_check;
    int checks_evaluated = 0;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

[[nodiscard]] inline std::string_view to_string(Label l) noexcept {
    return l == Label::Encrypted ? "Encrypted" : "Compressed";
}

[[nodiscard]] inline std::string_view to_string(Check c) noexcept {
    switch (c) {
        case Check::ChiAbs: return "ChiAbs";
        case Check::ChiConf: return "ChiConf";
        case Check::NistFails: return "NistFails";
    }
    return "?";
}

[[nodiscard]] inline FeatureVector extract_features(const RandomnessReport& report) noexcept {
    return {report.chi.statistic, report.chi.confidence_pct, report.nist_fail_count};
}

/// Mean and population standard deviation of the chi-square statistic over
/// encrypted samples; the confidence band and fail limit keep their defaults.
[[nodiscard]] inline ThresholdModel train_from_statistics(std::span<const double> chi_values, double gamma) {
    if (chi_values.size() < 2)
        throw std::invalid_argument("train: need at least 2 encrypted reports, got " +
                                    std::to_string(chi_values.size()));
    if (!(gamma > 0.0)) throw std::invalid_argument("train: gamma must be > 0");
    const double n = static_cast<double>(chi_values.size());
    double mean = 0.0;
    for (double v : chi_values) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : chi_values) var += (v - mean) * (v - mean);
    var /= n;

    ThresholdModel m;
    m.chi_mean = mean;
    m.chi_sigma = std::sqrt(var);
    m.gamma = gamma;
    m.trained_on = chi_values.size();
    return m;
}

[[nodiscard]] inline ThresholdModel train(std::span<const RandomnessReport> encrypted_reports, double gamma) {
    std::vector<double> chi;
    chi.reserve(encrypted_reports.size());
    for (const auto& r : encrypted_reports) chi.push_back(r.chi.statistic);
    return train_from_statistics(chi, gamma);
}

namespace detail {

inline std::optional<Verdict> chi_checks(double chi_abs, double chi_conf_pct, const ThresholdModel& model) {
    if (!(chi_abs >= model.chi_low() && chi_abs <= model.chi_high()))
        return Verdict{Label::Compressed, Check::ChiAbs, 1};
    if (!(chi_conf_pct >= model.conf_low_pct && chi_conf_pct <= model.conf_high_pct))
        return Verdict{Label::Compressed, Check::ChiConf, 2};
    return std::nullopt;
}

inline Verdict nist_check(int nist_fails, const ThresholdModel& model) {
    if (nist_fails > model.max_nist_fails) return {Label::Compressed, Check::NistFails, 3};
    return {Label::Encrypted, std::nullopt, 3};
}

} // namespace detail

/// Sequential checks, stopping at the first failure. Encrypted iff all three pass.
[[nodiscard]] inline Verdict classify(const FeatureVector& fv, const ThresholdModel& model) {
    if (auto v = detail::chi_checks(fv.chi_abs, fv.chi_conf_pct, model)) return *v;
    return detail::nist_check(fv.nist_fails, model);
}

/// Evaluates tests lazily in check order: SP 800-22 tests only run once both chi-square
/// checks pass, and stop as soon as the fail limit is exceeded. Requires 256+ bytes;
/// callers outside the supported regime go through here directly.
[[nodiscard]] inline Verdict classify_stream_unchecked(const ByteStream& s, const ThresholdModel& model,
                                                       const TestConfig& cfg) {
    cfg.validate();
    const auto chi = chi_square(s);
    if (auto v = detail::chi_checks(chi.statistic, chi.confidence_pct, model)) return *v;
    int fails = 0;
    using Test = PValueResult (*)(const ByteStream&, const TestConfig&);
    for (Test test : {Test{&block_frequency}, Test{&cumulative_sums}, Test{&approximate_entropy}}) {
        if (!test(s, cfg).passed) ++fails;
        if (fails > model.max_nist_fails) break;
    }
    return detail::nist_check(fails, model);
}

[[nodiscard]] inline Verdict classify_stream(const ByteStream& s, const ThresholdModel& model,
                                             const TestConfig& cfg = {}) {
    if (s.length_bytes() < kMinReportBytes)
        throw std::invalid_argument("classify_stream: payload must hold at least 1024 bytes, got " +
                                    std::to_string(s.length_bytes()));
    return classify_stream_unchecked(s, model, cfg);
}

// ---------------------------------------------------------------------------
// Model persistence: one `name=value` line per field, doubles with 17 significant digits.

namespace detail {
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view text, std::string_view field) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw std::runtime_error("model: cannot parse value of '" + std::string(field) + "': '" +
                                 std::string(text) + "'");
    return value;
}
} // namespace detail

inline void write_model(std::ostream& out, const ThresholdModel& m) {
    out << "chi_mean=" << detail::format_double(m.chi_mean) << '\n'
        << "chi_sigma=" << detail::format_double(m.chi_sigma) << '\n'
        << "gamma=" << detail::format_double(m.gamma) << '\n'
        << "conf_low_pct=" << detail::format_double(m.conf_low_pct) << '\n'
        << "conf_high_pct=" << detail::format_double(m.conf_high_pct) << '\n'
        << "max_nist_fails=" << m.max_nist_fails << '\n'
        << "trained_on=" << m.trained_on << '\n';
}

[[nodiscard]] inline ThresholdModel read_model(std::istream& in) {
    std::map<std::string, std::string, std::less<>> fields;
    std::string line;
    while (std::getline(in, line)) {
        const auto view = detail::trim(line);
        if (view.empty() || view.front() == '#') continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) throw std::runtime_error("model: malformed line '" + line + "'");
        fields[std::string(detail::trim(view.substr(0, eq)))] = std::string(detail::trim(view.substr(eq + 1)));
    }
    auto take = [&](std::string_view name) -> std::string {
        auto it = fields.find(name);
        if (it == fields.end()) throw std::runtime_error("model: missing field '" + std::string(name) + "'");
        std::string v = it->second;
        fields.erase(it);
        return v;
    };
    ThresholdModel m;
    m.chi_mean = detail::parse_number<double>(take("chi_mean"), "chi_mean");
    m.chi_sigma = detail::parse_number<double>(take("chi_sigma"), "chi_sigma");
    m.gamma = detail::parse_number<double>(take("gamma"), "gamma");
    m.conf_low_pct = detail::parse_number<double>(take("conf_low_pct"), "conf_low_pct");
    m.conf_high_pct = detail::parse_number<double>(take("conf_high_pct"), "conf_high_pct");
    m.max_nist_fails = detail::parse_number<int>(take("max_nist_fails"), "max_nist_fails");
    m.trained_on = detail::parse_number<std::size_t>(take("trained_on"), "trained_on");
    if (!fields.empty()) throw std::runtime_error("model: unknown field '" + fields.begin()->first + "'");
    m.validate();
    return m;
}

inline void save_model(const std::string& path, const ThresholdModel& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open model file for writing: " + path);
    write_model(out, m);
    if (!out) throw std::runtime_error("failed writing model file: " + path);
}

[[nodiscard]] inline ThresholdModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    return read_model(in);
}

} // namespace hedge

#endif // HEDGE_CLASSIFIER_HPP
