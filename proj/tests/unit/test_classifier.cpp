#include "hedge/classifier.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using hedge::Check;
using hedge::FeatureVector;
using hedge::Label;
using hedge::ThresholdModel;

namespace {

ThresholdModel table_iv_model(double gamma) {
    ThresholdModel m;
    m.chi_mean = 255.37;
    m.chi_sigma = 22.82;
    m.gamma = gamma;
    return m;
}

hedge::RandomnessReport report_with(double chi, double conf, int fails) {
    hedge::RandomnessReport r;
    r.chi.statistic = chi;
    r.chi.confidence_pct = conf;
    r.nist_fail_count = fails;
    return r;
}

hedge::ByteStream stream(std::vector<std::uint8_t> v) { return hedge::ByteStream::from_bytes(std::move(v)); }

} // namespace

TEST(Features, Projection) {
    EXPECT_EQ(hedge::extract_features(report_with(255.0, 50.0, 0)), (FeatureVector{255.0, 50.0, 0}));
    const auto r = report_with(16'711'680.0, 0.0, 3);
    EXPECT_EQ(hedge::extract_features(r), (FeatureVector{16'711'680.0, 0.0, 3}));
    EXPECT_EQ(hedge::extract_features(r), hedge::extract_features(r));
}

TEST(Train, ConstantSample) {
    std::vector<hedge::RandomnessReport> reports(3, report_with(255.0, 50.0, 0));
    const auto m = hedge::train(reports, 1.0);
    EXPECT_DOUBLE_EQ(m.chi_mean, 255.0);
    EXPECT_DOUBLE_EQ(m.chi_sigma, 0.0);
    EXPECT_EQ(m.trained_on, 3u);
}

TEST(Train, PopulationStandardDeviation) {
    const std::vector<double> chi{250.0, 260.0};
    const auto m = hedge::train_from_statistics(chi, 2.0);
    EXPECT_DOUBLE_EQ(m.chi_mean, 255.0);
    EXPECT_DOUBLE_EQ(m.chi_sigma, 5.0);
    EXPECT_DOUBLE_EQ(m.chi_low(), 245.0);
    EXPECT_DOUBLE_EQ(m.chi_high(), 265.0);
}

TEST(Train, Preconditions) {
    std::vector<hedge::RandomnessReport> one(1, report_with(255.0, 50.0, 0));
    EXPECT_THROW((void)hedge::train(one, 1.0), std::invalid_argument);
    std::vector<hedge::RandomnessReport> two(2, report_with(255.0, 50.0, 0));
    EXPECT_THROW((void)hedge::train(two, 0.0), std::invalid_argument);
}

TEST(Train, LargeEncryptedSampleMatchesChiSquareMoments) {
    std::vector<double> chi;
    for (std::uint64_t i = 0; i < 2000; ++i)
        chi.push_back(hedge::chi_square(stream(fixture::encrypted_chunk(i, 4096))).statistic);
    const auto m = hedge::train_from_statistics(chi, 1.0);
    EXPECT_NEAR(m.chi_mean, 255.0, 2.0);
    EXPECT_NEAR(m.chi_sigma, std::sqrt(510.0), 2.0);
}

TEST(Classify, EncryptedAtTableThresholds) {
    const auto v = hedge::classify({255.0, 50.0, 0}, table_iv_model(1.0));
    EXPECT_EQ(v.label, Label::Encrypted);
    EXPECT_FALSE(v.failed_check.has_value());
    EXPECT_EQ(v.checks_evaluated, 3);
}

TEST(Classify, HugeChiShortCircuits) {
    const auto v = hedge::classify({16'711'680.0, 0.0, 3}, table_iv_model(1.0));
    EXPECT_EQ(v.label, Label::Compressed);
    EXPECT_EQ(v.failed_check, Check::ChiAbs);
    EXPECT_EQ(v.checks_evaluated, 1);
}

TEST(Classify, GainWidensWindow) {
    // 255.37 + 22.82 = 278.19 < 290 < 301.01 = 255.37 + 2 * 22.82
    const FeatureVector fv{290.0, 50.0, 0};
    const auto narrow = hedge::classify(fv, table_iv_model(1.0));
    EXPECT_EQ(narrow.label, Label::Compressed);
    EXPECT_EQ(narrow.failed_check, Check::ChiAbs);
    EXPECT_EQ(narrow.checks_evaluated, 1);
    const auto wide = hedge::classify(fv, table_iv_model(2.0));
    EXPECT_EQ(wide.label, Label::Encrypted);
    EXPECT_EQ(wide.checks_evaluated, 3);
}

TEST(Classify, WindowAndBandAreInclusive) {
    ThresholdModel m;
    m.chi_mean = 250.0;
    m.chi_sigma = 10.0;
    m.gamma = 1.0;
    EXPECT_EQ(hedge::classify({240.0, 1.0, 0}, m).label, Label::Encrypted);
    EXPECT_EQ(hedge::classify({260.0, 99.0, 0}, m).label, Label::Encrypted);
    EXPECT_EQ(hedge::classify({260.0, 99.5, 0}, m).failed_check, Check::ChiConf);
    EXPECT_EQ(hedge::classify({255.0, 0.5, 0}, m).checks_evaluated, 2);
    EXPECT_EQ(hedge::classify({255.0, 50.0, 1}, m).failed_check, Check::NistFails);
}

TEST(Classify, GammaMonotoneProperty) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> chi(150.0, 400.0), conf(0.0, 100.0), g(0.05, 5.0);
    std::uniform_int_distribution<int> fails(0, 3);
    const auto base = table_iv_model(1.0);
    for (int i = 0; i < 10'000; ++i) {
        const FeatureVector fv{chi(rng), conf(rng), fails(rng)};
        double g1 = g(rng), g2 = g(rng);
        if (g1 > g2) std::swap(g1, g2);
        if (hedge::classify(fv, base.with_gamma(g1)).label == Label::Encrypted) {
            ASSERT_EQ(hedge::classify(fv, base.with_gamma(g2)).label, Label::Encrypted);
        }
    }
}

TEST(ClassifyStream, AllZeroRunsNoSpTests) {
    const auto before = hedge::instrumentation::sp800_22_calls;
    const auto v = hedge::classify_stream(stream(std::vector<std::uint8_t>(1024, 0)), table_iv_model(2.0));
    EXPECT_EQ(v.label, Label::Compressed);
    EXPECT_EQ(v.failed_check, Check::ChiAbs);
    EXPECT_EQ(hedge::instrumentation::sp800_22_calls, before);
}

TEST(ClassifyStream, EncryptedFixturesMostlyEncrypted) {
    int encrypted = 0;
    for (std::uint64_t i = 0; i < 100; ++i)
        encrypted += hedge::classify_stream(stream(fixture::encrypted_chunk(i, 65536)), table_iv_model(2.0)).label ==
                     Label::Encrypted;
    EXPECT_GE(encrypted, 90);
}

TEST(ClassifyStream, LazyEqualsEager) {
    const auto model = table_iv_model(2.0);
    for (std::uint64_t i = 0; i < 300; ++i) {
        std::vector<std::uint8_t> data;
        switch (i % 3) {
            case 0: data = fixture::encrypted_chunk(i, 1024 << (i % 4)); break;
            case 1: data = fixture::compressed_chunk(i, 1024 << (i % 4)); break;
            default: data = fixture::biased_bytes(i, 2048, 0.502); break;
        }
        const auto s = stream(data);
        const auto eager = hedge::classify(hedge::extract_features(hedge::run_all(s)), model);
        ASSERT_EQ(hedge::classify_stream(s, model), eager) << i;
    }
}

TEST(ClassifyStream, StopsAtFirstNistFailure) {
    // A stream whose chi-square looks random but whose bits are strongly periodic.
    std::vector<std::uint8_t> data;
    for (int r = 0; r < 16; ++r)
        for (int v = 0; v < 256; ++v) data.push_back(static_cast<std::uint8_t>(v));
    auto model = table_iv_model(2.0);
    model.chi_mean = 0.0;  // accept the perfect-fit chi of 0
    model.chi_sigma = 1.0;
    model.conf_high_pct = 100.0;
    const auto before = hedge::instrumentation::sp800_22_calls;
    const auto v = hedge::classify_stream(stream(data), model);
    const auto calls = hedge::instrumentation::sp800_22_calls - before;
    EXPECT_EQ(v.failed_check, Check::NistFails);
    EXPECT_GE(calls, 1u);
    EXPECT_LT(calls, 3u);
}

TEST(ClassifyStream, BelowFloorRejected) {
    EXPECT_THROW((void)hedge::classify_stream(stream(std::vector<std::uint8_t>(1023, 1)), table_iv_model(1.0)),
                 std::invalid_argument);
}

TEST(ModelIo, RoundTripIsExact) {
    ThresholdModel m;
    m.chi_mean = 255.123456789012345;
    m.chi_sigma = 22.0 / 3.0;
    m.gamma = 0.1;
    m.trained_on = 1234;
    std::stringstream ss;
    hedge::write_model(ss, m);
    EXPECT_EQ(hedge::read_model(ss), m);
}

TEST(ModelIo, RejectsMalformed) {
    std::stringstream bad("chi_mean=abc\n");
    EXPECT_THROW((void)hedge::read_model(bad), std::runtime_error);
    std::stringstream missing("chi_mean=1\n");
    EXPECT_THROW((void)hedge::read_model(missing), std::runtime_error);
}

TEST(ModelIo, FileRoundTrip) {
    fixture::TempDir dir("model");
    const auto path = (dir.path() / "m.txt").string();
    const auto m = table_iv_model(2.0);
    hedge::save_model(path, m);
    EXPECT_EQ(hedge::load_model(path), m);
    EXPECT_THROW((void)hedge::load_model((dir.path() / "none").string()), std::runtime_error);
}
