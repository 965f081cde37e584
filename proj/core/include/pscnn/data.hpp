#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pscnn/errors.hpp"

namespace pscnn {

/// In-memory classification dataset: uniform-length real feature rows with
/// class labels in [0, class_count).
struct Dataset {
    std::vector<std::vector<double>> features;
    std::vector<std::size_t> labels;
    std::size_t class_count = 0;
    std::vector<std::string> feature_names;  // optional, may be empty

    std::size_t size() const { return features.size(); }
    std::size_t dimension() const { return features.empty() ? 0 : features.front().size(); }
};

/// Reads comma-separated numeric rows with a final integer label column.
/// class_count becomes 1 + max label. Rejects ragged rows and non-numeric
/// cells; an optional single header line provides feature names.
Dataset load_csv(const std::string& path, bool has_header = false);

/// Writes the dataset in the same format load_csv reads, with shortest
/// round-trip number formatting. Deterministic: equal datasets give
/// byte-identical files.
void save_csv(const Dataset& ds, const std::string& path);

/// One-hot targets over class_count classes, +1 for the true class and -1
/// elsewhere.
std::vector<std::vector<double>> bipolar_targets(const Dataset& ds);

/// The four canonical XOR points, labels 0,1,1,0.
Dataset xor_dataset();

/// C isotropic Gaussian clusters in d dimensions, n_per_class points each.
/// Cluster centers are drawn uniform in [0, 1]^d from the seed, points as
/// center + spread * N(0, I). Fully deterministic under the seed.
Dataset gaussian_clusters(std::size_t classes, std::size_t dimension,
                          std::size_t n_per_class, double spread, std::uint64_t seed);

/// Seeded shuffle, then partition at round(train_fraction * size).
std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction,
                                  std::uint64_t seed);

}  // namespace pscnn
