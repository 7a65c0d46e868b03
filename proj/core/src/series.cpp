#include "dmfprep/series.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace dmfprep {

namespace {

ConcFactor term(double x, int i, int precision) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("series value at index " + std::to_string(i) +
                                " out of [0, 1]: " + std::to_string(x));
    return ConcFactor::quantize(x, precision);
}

}  // namespace

TargetSeries linear_series(double start, double delta, int count,
                           int precision) {
    TargetSeries out;
    for (int i = 1; i <= count; ++i)
        out.push_back(term(start + (i - 1) * delta, i, precision));
    return out;
}

TargetSeries harmonic_series(double start, int count, int precision) {
    TargetSeries out;
    for (int i = 1; i <= count; ++i)
        out.push_back(term(start / i, i, precision));
    return out;
}

TargetSeries geometric_series(double start, double ratio, int count,
                              int precision) {
    TargetSeries out;
    double x = start;
    for (int i = 1; i <= count; ++i) {
        out.push_back(term(x, i, precision));
        x *= ratio;
    }
    return out;
}

TargetSeries parabolic_series(double start, double coeff, int count,
                              int precision) {
    TargetSeries out;
    for (int i = 1; i <= count; ++i) {
        double k = static_cast<double>(i - 1);
        out.push_back(term(start + coeff * k * k, i, precision));
    }
    return out;
}

std::vector<TargetSeries> random_series_corpus(const CorpusOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> n_dist(opt.min_targets, opt.max_targets);
    std::uniform_int_distribution<int> d_dist(2, opt.max_precision);
    std::vector<TargetSeries> corpus;
    corpus.reserve(opt.count);
    for (int c = 0; c < opt.count; ++c) {
        int n = n_dist(rng);
        int d = d_dist(rng);
        std::uniform_int_distribution<std::uint64_t> k_dist(
            0, std::uint64_t{1} << d);
        TargetSeries ts;
        ts.reserve(n);
        for (int j = 0; j < n; ++j) ts.push_back(ConcFactor::make(k_dist(rng), d));
        corpus.push_back(std::move(ts));
    }
    return corpus;
}

std::vector<TargetSeries> family_series_corpus(int precision) {
    return {
        linear_series(0.10, 0.05, 8, precision),
        linear_series(0.125, 0.125, 7, precision),
        harmonic_series(0.9, 6, precision),
        geometric_series(0.8, 0.5, 6, precision),
        parabolic_series(0.05, 0.015, 8, precision),
    };
}

}  // namespace dmfprep
