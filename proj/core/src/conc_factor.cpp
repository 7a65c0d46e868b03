#include "dmfprep/conc_factor.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace dmfprep {

ConcFactor ConcFactor::one() {
    ConcFactor c;
    c.num_ = 1;
    c.prec_ = 0;
    return c;
}

ConcFactor ConcFactor::canonical(std::uint64_t k, int d) {
    if (d < 0 || d > kMaxInternal)
        throw std::overflow_error("concentration precision out of range: d=" +
                                  std::to_string(d));
    if (k > (std::uint64_t{1} << d))
        throw std::invalid_argument("concentration above 1: " +
                                    std::to_string(k) + "/2^" +
                                    std::to_string(d));
    if (k == 0) d = 0;
    while (d > 0 && (k & 1) == 0) {
        k >>= 1;
        --d;
    }
    ConcFactor c;
    c.num_ = k;
    c.prec_ = d;
    return c;
}

ConcFactor ConcFactor::make(std::uint64_t k, int d) {
    if (d < 0 || d > kMaxPrecision)
        throw std::invalid_argument("precision must be in [0, " +
                                    std::to_string(kMaxPrecision) +
                                    "]: " + std::to_string(d));
    return canonical(k, d);
}

ConcFactor ConcFactor::quantize(double x, int d) {
    if (d < 0 || d > kMaxPrecision)
        throw std::invalid_argument("precision must be in [0, " +
                                    std::to_string(kMaxPrecision) +
                                    "]: " + std::to_string(d));
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("concentration must be in [0, 1]: " +
                                std::to_string(x));
    double scaled = std::floor(x * std::ldexp(1.0, d) + 0.5);
    auto k = static_cast<std::uint64_t>(scaled);
    if (k > (std::uint64_t{1} << d)) k = std::uint64_t{1} << d;
    return canonical(k, d);
}

ConcFactor ConcFactor::parse(const std::string& text,
                             std::optional<int> decimal_precision) {
    auto fail = [&]() -> ConcFactor {
        throw std::invalid_argument("cannot parse concentration: '" + text +
                                    "'");
    };
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) return fail();

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (num.empty() || den.empty()) return fail();
        std::uint64_t k = 0, q = 0;
        try {
            size_t pos = 0;
            k = std::stoull(num, &pos);
            if (pos != num.size()) return fail();
            q = std::stoull(den, &pos);
            if (pos != den.size()) return fail();
        } catch (const std::exception&) {
            return fail();
        }
        if (q == 0 || !std::has_single_bit(q))
            throw std::invalid_argument(
                "denominator must be a power of two: '" + text + "'");
        int d = std::countr_zero(q);
        if (d > kMaxPrecision)
            throw std::invalid_argument("denominator too fine: '" + text +
                                        "'");
        if (k > q)
            throw std::invalid_argument("concentration above 1: '" + text +
                                        "'");
        return canonical(k, d);
    }

    if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
        s.find('E') != std::string::npos) {
        if (!decimal_precision)
            throw std::invalid_argument(
                "decimal concentration needs a quantization precision: '" +
                text + "'");
        double x = 0;
        try {
            size_t pos = 0;
            x = std::stod(s, &pos);
            if (pos != s.size()) return fail();
        } catch (const std::exception&) {
            return fail();
        }
        return quantize(x, *decimal_precision);
    }

    if (s == "0") return zero();
    if (s == "1") return one();
    return fail();
}

std::uint64_t ConcFactor::numerator_at(int d) const {
    if (d < prec_ || d > kMaxInternal)
        throw std::invalid_argument("cannot rescale to denominator 2^" +
                                    std::to_string(d));
    return num_ << (d - prec_);
}

double ConcFactor::to_double() const {
    return std::ldexp(static_cast<double>(num_), -prec_);
}

int ConcFactor::popcount() const { return std::popcount(num_); }

std::string ConcFactor::str() const {
    if (is_zero()) return "0";
    if (is_one()) return "1";
    return std::to_string(num_) + "/" +
           std::to_string(std::uint64_t{1} << prec_);
}

std::string ConcFactor::str_at(int d) const {
    return std::to_string(numerator_at(d)) + "/" +
           std::to_string(std::uint64_t{1} << d);
}

std::strong_ordering operator<=>(const ConcFactor& a, const ConcFactor& b) {
    int p = std::max(a.prec_, b.prec_);
    return a.numerator_at(p) <=> b.numerator_at(p);
}

ConcFactor mix(const ConcFactor& a, const ConcFactor& b) {
    int p = std::max(a.precision(), b.precision());
    std::uint64_t sum = a.numerator_at(p) + b.numerator_at(p);
    return ConcFactor::canonical(sum, p + 1);
}

std::optional<ConcFactor> complement(const ConcFactor& t, const ConcFactor& h) {
    int p = std::max(t.precision(), h.precision());
    std::uint64_t tt = 2 * t.numerator_at(p);
    std::uint64_t hh = h.numerator_at(p);
    if (hh > tt) return std::nullopt;
    std::uint64_t c = tt - hh;
    if (c > (std::uint64_t{1} << p)) return std::nullopt;
    return ConcFactor::canonical(c, p);
}

std::optional<ConcFactor> doubled(const ConcFactor& t) {
    if (t.is_zero()) return ConcFactor::zero();
    if (t.precision() < 1) return std::nullopt;  // t >= 1 would exceed 1
    if (t.numerator() > (std::uint64_t{1} << (t.precision() - 1)))
        return std::nullopt;  // above 1/2
    return ConcFactor::canonical(t.numerator(), t.precision() - 1);
}

}  // namespace dmfprep
