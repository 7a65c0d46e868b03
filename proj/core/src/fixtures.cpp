#include "dmfprep/series.hpp"

namespace dmfprep {

namespace {

TargetSeries at(int d, std::initializer_list<std::uint64_t> ks) {
    TargetSeries ts;
    for (auto k : ks) ts.push_back(ConcFactor::make(k, d));
    return ts;
}

}  // namespace

TargetSeries fixture_ts1() { return at(4, {5, 11, 14, 16, 14, 11, 5}); }

TargetSeries fixture_ts2() { return at(5, {9, 18, 25, 30, 32, 28, 22}); }

TargetSeries fixture_ts3() { return at(6, {31, 55, 64, 51}); }

}  // namespace dmfprep
