#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pscnn/bitvector.hpp"

namespace pscnn {

/// The bijective binary transforms a module may apply to its input.
enum class TransformKind { Identity, GrayCode, PerfectShuffle, OnesComplement, TwosComplement };

std::string to_string(TransformKind kind);
TransformKind transform_from_string(const std::string& name);

// Reflected binary Gray code, g = b XOR (b >> 1). g[0] = b[0],
// g[i] = b[i-1] XOR b[i].
BitVector gray_encode(const BitVector& b);

// Inverse of gray_encode: prefix-XOR scan.
BitVector gray_decode(const BitVector& g);

// Riffle of the two halves: out[2i] = b[i], out[2i+1] = b[w/2 + i].
// Width must be even.
BitVector perfect_shuffle(const BitVector& b);

// Inverse of perfect_shuffle.
BitVector perfect_unshuffle(const BitVector& b);

/// Bitwise NOT.
BitVector ones_complement(const BitVector& b);

/// (NOT b) + 1 modulo 2^w.
BitVector twos_complement(const BitVector& b);

/// One application of the given transform.
BitVector apply_transform(TransformKind kind, const BitVector& b);

/// Inverse of one application.
BitVector invert_transform(TransformKind kind, const BitVector& b);

/// The transform applied module_index times; module 0 sees the input as is.
BitVector apply_pipeline(TransformKind kind, std::size_t module_index, const BitVector& b);

/// Bit 0 -> -1.0, bit 1 -> +1.0.
std::vector<double> to_bipolar(const BitVector& b);

/// Uniform per-feature quantizer mapping real vectors into the binary
/// transform domain. Ranges must satisfy lo < hi for every feature.
struct QuantizationSpec {
    unsigned bits_per_feature = 1;
    std::vector<std::pair<double, double>> ranges;  // (lo, hi) per feature

    std::size_t feature_count() const { return ranges.size(); }
    std::size_t code_width() const { return ranges.size() * bits_per_feature; }
    void validate() const;
};

/// Spec with per-feature observed (min, max) ranges. Degenerate ranges
/// (constant feature) are widened by 0.5 on each side to keep lo < hi.
QuantizationSpec fit_quantization(const std::vector<std::vector<double>>& features,
                                  unsigned bits_per_feature);

// Per-feature integer level: clamp to [lo, hi], map linearly onto
// [0, 2^bits - 1], round to nearest with ties up.
std::vector<std::uint64_t> quantize_levels(std::span<const double> x,
                                           const QuantizationSpec& spec);

/// Levels concatenated MSB-first into one word of width dim * bits_per_feature.
BitVector quantize(std::span<const double> x, const QuantizationSpec& spec);

/// Midpoint reconstruction; within one quantization step of the clamped input.
std::vector<double> dequantize(const BitVector& code, const QuantizationSpec& spec);

}  // namespace pscnn
