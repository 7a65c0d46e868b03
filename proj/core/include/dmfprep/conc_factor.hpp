#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace dmfprep {

// Dyadic concentration factor k / 2^d, kept canonical: k odd, or k in {0,1}
// with d == 0.  All arithmetic is exact on 64-bit integers.
class ConcFactor {
public:
    static constexpr int kMaxPrecision = 30;  // cap for user-supplied values
    static constexpr int kMaxInternal = 40;   // hard guard for derived values

    ConcFactor() : num_(0), prec_(0) {}

    static ConcFactor zero() { return ConcFactor(); }
    static ConcFactor one();

    // k / 2^d with range and precision checks; canonicalizes.
    static ConcFactor make(std::uint64_t k, int d);

    // Nearest k / 2^d to x, ties rounded up.
    static ConcFactor quantize(double x, int d);

    // Accepts "k/2^d" fractions ("5/16", denominator a power of two),
    // bare "0" / "1", or a decimal ("0.3125") which is quantized at
    // decimal_precision.
    static ConcFactor parse(const std::string& text,
                            std::optional<int> decimal_precision = std::nullopt);

    std::uint64_t numerator() const { return num_; }
    int precision() const { return prec_; }
    // numerator rescaled to denominator 2^d (d >= precision()).
    std::uint64_t numerator_at(int d) const;

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && prec_ == 0; }
    double to_double() const;
    int popcount() const;

    // canonical rendering: "0", "1", "5/16"
    std::string str() const;
    // fixed-denominator rendering: str_at(4) -> "14/16"
    std::string str_at(int d) const;

    // dense key for hashing / map lookups
    std::uint64_t packed() const {
        return (num_ << 6) | static_cast<std::uint64_t>(prec_);
    }

    friend bool operator==(const ConcFactor& a, const ConcFactor& b) {
        return a.num_ == b.num_ && a.prec_ == b.prec_;
    }
    friend std::strong_ordering operator<=>(const ConcFactor& a,
                                            const ConcFactor& b);

    // exact average (a + b) / 2
    friend ConcFactor mix(const ConcFactor& a, const ConcFactor& b);
    friend std::optional<ConcFactor> complement(const ConcFactor& t,
                                                const ConcFactor& h);
    friend std::optional<ConcFactor> doubled(const ConcFactor& t);

private:
    static ConcFactor canonical(std::uint64_t k, int d);

    std::uint64_t num_;
    std::int32_t prec_;
};

ConcFactor mix(const ConcFactor& a, const ConcFactor& b);

// 2t - h if it lands in [0, 1]
std::optional<ConcFactor> complement(const ConcFactor& t, const ConcFactor& h);

// 2t if it lands in [0, 1]
std::optional<ConcFactor> doubled(const ConcFactor& t);

}  // namespace dmfprep
