#include "pscnn/transforms.hpp"

#include <cmath>

#include "pscnn/errors.hpp"

namespace pscnn {

std::string to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::Identity: return "identity";
        case TransformKind::GrayCode: return "gray";
        case TransformKind::PerfectShuffle: return "shuffle";
        case TransformKind::OnesComplement: return "ones";
        case TransformKind::TwosComplement: return "twos";
    }
    throw InvalidParameters("unknown transform kind");
}

TransformKind transform_from_string(const std::string& name) {
    if (name == "identity") return TransformKind::Identity;
    if (name == "gray") return TransformKind::GrayCode;
    if (name == "shuffle") return TransformKind::PerfectShuffle;
    if (name == "ones") return TransformKind::OnesComplement;
    if (name == "twos") return TransformKind::TwosComplement;
    throw InvalidParameters("unknown transform: " + name +
                            " (expected identity|gray|shuffle|ones|twos)");
}

BitVector gray_encode(const BitVector& b) {
    const std::size_t w = b.width();
    BitVector g(w);
    g.set(0, b.get(0));
    for (std::size_t i = 1; i < w; ++i) g.set(i, b.get(i - 1) != b.get(i));
    return g;
}

BitVector gray_decode(const BitVector& g) {
    const std::size_t w = g.width();
    BitVector b(w);
    bool acc = g.get(0);
    b.set(0, acc);
    for (std::size_t i = 1; i < w; ++i) {
        acc = acc != g.get(i);
        b.set(i, acc);
    }
    return b;
}

BitVector perfect_shuffle(const BitVector& b) {
    const std::size_t w = b.width();
    if (w % 2 != 0)
        throw OddWidthError("perfect shuffle requires even width, got " + std::to_string(w));
    BitVector out(w);
    const std::size_t half = w / 2;
    for (std::size_t i = 0; i < half; ++i) {
        out.set(2 * i, b.get(i));
        out.set(2 * i + 1, b.get(half + i));
    }
    return out;
}

BitVector perfect_unshuffle(const BitVector& b) {
    const std::size_t w = b.width();
    if (w % 2 != 0)
        throw OddWidthError("perfect unshuffle requires even width, got " + std::to_string(w));
    BitVector out(w);
    const std::size_t half = w / 2;
    for (std::size_t i = 0; i < half; ++i) {
        out.set(i, b.get(2 * i));
        out.set(half + i, b.get(2 * i + 1));
    }
    return out;
}

BitVector ones_complement(const BitVector& b) {
    BitVector out(b.width());
    for (std::size_t i = 0; i < b.width(); ++i) out.set(i, !b.get(i));
    return out;
}

BitVector twos_complement(const BitVector& b) {
    BitVector out = ones_complement(b);
    // add 1, carrying from the least significant end (highest index)
    for (std::size_t i = out.width(); i-- > 0;) {
        if (!out.get(i)) {
            out.set(i, true);
            return out;
        }
        out.set(i, false);
    }
    return out;  // all ones + 1 wraps to zero
}

BitVector apply_transform(TransformKind kind, const BitVector& b) {
    switch (kind) {
        case TransformKind::Identity: return b;
        case TransformKind::GrayCode: return gray_encode(b);
        case TransformKind::PerfectShuffle: return perfect_shuffle(b);
        case TransformKind::OnesComplement: return ones_complement(b);
        case TransformKind::TwosComplement: return twos_complement(b);
    }
    throw InvalidParameters("unknown transform kind");
}

BitVector invert_transform(TransformKind kind, const BitVector& b) {
    switch (kind) {
        case TransformKind::Identity: return b;
        case TransformKind::GrayCode: return gray_decode(b);
        case TransformKind::PerfectShuffle: return perfect_unshuffle(b);
        case TransformKind::OnesComplement: return ones_complement(b);
        case TransformKind::TwosComplement: return twos_complement(b);
    }
    throw InvalidParameters("unknown transform kind");
}

BitVector apply_pipeline(TransformKind kind, std::size_t module_index, const BitVector& b) {
    BitVector out = b;
    for (std::size_t k = 0; k < module_index; ++k) out = apply_transform(kind, out);
    return out;
}

std::vector<double> to_bipolar(const BitVector& b) {
    std::vector<double> v(b.width());
    for (std::size_t i = 0; i < b.width(); ++i) v[i] = b.get(i) ? 1.0 : -1.0;
    return v;
}

void QuantizationSpec::validate() const {
    if (bits_per_feature < 1)
        throw InvalidParameters("bits_per_feature must be >= 1");
    if (bits_per_feature > 63)
        throw InvalidParameters("bits_per_feature must be <= 63");
    if (ranges.empty()) throw InvalidParameters("quantization spec has no features");
    for (const auto& [lo, hi] : ranges)
        if (!(lo < hi))
            throw InvalidParameters("quantization range must satisfy lo < hi");
}

QuantizationSpec fit_quantization(const std::vector<std::vector<double>>& features,
                                  unsigned bits_per_feature) {
    if (features.empty()) throw EmptyDataset("cannot fit quantization on empty data");
    QuantizationSpec spec;
    spec.bits_per_feature = bits_per_feature;
    const std::size_t dim = features.front().size();
    spec.ranges.assign(dim, {0.0, 0.0});
    for (std::size_t j = 0; j < dim; ++j) {
        double lo = features[0][j], hi = features[0][j];
        for (const auto& row : features) {
            if (row.size() != dim)
                throw DimensionMismatch("feature rows have differing lengths");
            lo = std::min(lo, row[j]);
            hi = std::max(hi, row[j]);
        }
        if (lo == hi) {  // constant feature
            lo -= 0.5;
            hi += 0.5;
        }
        spec.ranges[j] = {lo, hi};
    }
    spec.validate();
    return spec;
}

std::vector<std::uint64_t> quantize_levels(std::span<const double> x,
                                           const QuantizationSpec& spec) {
    spec.validate();
    if (x.size() != spec.feature_count())
        throw DimensionMismatch("quantize: expected " + std::to_string(spec.feature_count()) +
                                " features, got " + std::to_string(x.size()));
    const std::uint64_t max_level = (std::uint64_t{1} << spec.bits_per_feature) - 1;
    std::vector<std::uint64_t> levels(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const auto [lo, hi] = spec.ranges[j];
        double v = std::min(std::max(x[j], lo), hi);
        double scaled = (v - lo) / (hi - lo) * static_cast<double>(max_level);
        levels[j] = static_cast<std::uint64_t>(std::floor(scaled + 0.5));  // ties up
    }
    return levels;
}

BitVector quantize(std::span<const double> x, const QuantizationSpec& spec) {
    const auto levels = quantize_levels(x, spec);
    BitVector code(levels.size() * spec.bits_per_feature);
    std::size_t pos = 0;
    for (std::uint64_t level : levels)
        for (unsigned k = spec.bits_per_feature; k-- > 0;)
            code.set(pos++, ((level >> k) & 1u) != 0);
    return code;
}

std::vector<double> dequantize(const BitVector& code, const QuantizationSpec& spec) {
    spec.validate();
    if (code.width() != spec.code_width())
        throw DimensionMismatch("dequantize: code width does not match spec");
    const std::uint64_t max_level = (std::uint64_t{1} << spec.bits_per_feature) - 1;
    std::vector<double> x(spec.feature_count());
    std::size_t pos = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        std::uint64_t level = 0;
        for (unsigned k = 0; k < spec.bits_per_feature; ++k)
            level = (level << 1) | (code.get(pos++) ? 1u : 0u);
        const auto [lo, hi] = spec.ranges[j];
        x[j] = lo + static_cast<double>(level) / static_cast<double>(max_level) * (hi - lo);
    }
    return x;
}

}  // namespace pscnn
