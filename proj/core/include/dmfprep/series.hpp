#pragma once

#include <cstdint>
#include <vector>

#include "dmfprep/conc_factor.hpp"

namespace dmfprep {

using TargetSeries = std::vector<ConcFactor>;

// Closed-form target series, each value quantized to k / 2^precision.
// Throws std::domain_error naming the offending 1-based index when a
// term falls outside [0, 1].
TargetSeries linear_series(double start, double delta, int count,
                           int precision);
TargetSeries harmonic_series(double start, int count, int precision);
TargetSeries geometric_series(double start, double ratio, int count,
                              int precision);
TargetSeries parabolic_series(double start, double coeff, int count,
                              int precision);

// Benchmark instances used throughout the tests.
TargetSeries fixture_ts1();  // precision 4, seven targets
TargetSeries fixture_ts2();  // precision 5, seven targets
TargetSeries fixture_ts3();  // precision 6, four targets

struct CorpusOptions {
    int count = 50;
    int min_targets = 2;
    int max_targets = 8;
    int max_precision = 7;
    std::uint64_t seed = 0x5eed;
};

// Deterministic random instances for property tests and benchmarks.
std::vector<TargetSeries> random_series_corpus(const CorpusOptions& opt);

// One instance per closed-form family at the given precision.
std::vector<TargetSeries> family_series_corpus(int precision = 7);

}  // namespace dmfprep
