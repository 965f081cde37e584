#include "pscnn/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "pscnn/rng.hpp"

namespace pscnn {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string trimmed(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_cell(const std::string& raw, std::size_t row, std::size_t column) {
    const std::string cell = trimmed(raw);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(column) +
                             ": cannot parse '" + cell + "' as a number",
                         row, column);
    return value;
}

// Shortest decimal form that parses back to the same double.
std::string format_number(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

Dataset load_csv(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    Dataset ds;
    std::string line;
    std::size_t row = 0;
    std::size_t field_count = 0;
    while (std::getline(in, line)) {
        ++row;
        if (row == 1 && has_header) {
            ds.feature_names = split_fields(line);
            if (!ds.feature_names.empty()) ds.feature_names.pop_back();  // label column
            continue;
        }
        if (trimmed(line).empty()) continue;
        const auto fields = split_fields(line);
        if (field_count == 0) {
            field_count = fields.size();
            if (field_count < 2)
                throw ParseError("row " + std::to_string(row) +
                                     ": need at least one feature and a label column",
                                 row, 1);
        } else if (fields.size() != field_count) {
            throw RaggedRow("row " + std::to_string(row) + " has " +
                                std::to_string(fields.size()) + " fields, expected " +
                                std::to_string(field_count),
                            row);
        }
        std::vector<double> features(field_count - 1);
        for (std::size_t c = 0; c + 1 < field_count; ++c)
            features[c] = parse_cell(fields[c], row, c + 1);
        const double label_value = parse_cell(fields.back(), row, field_count);
        if (label_value < 0.0 || label_value != std::floor(label_value))
            throw ParseError("row " + std::to_string(row) + ": label '" + fields.back() +
                                 "' is not a non-negative integer",
                             row, field_count);
        ds.features.push_back(std::move(features));
        ds.labels.push_back(static_cast<std::size_t>(label_value));
    }
    if (ds.features.empty()) throw EmptyDataset(path + " contains no data rows");
    ds.class_count = 1 + *std::max_element(ds.labels.begin(), ds.labels.end());
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    if (!ds.feature_names.empty()) {
        for (const auto& name : ds.feature_names) out << name << ',';
        out << "label\n";
    }
    for (std::size_t s = 0; s < ds.size(); ++s) {
        for (double v : ds.features[s]) out << format_number(v) << ',';
        out << ds.labels[s] << '\n';
    }
    if (!out) throw IoError("write failed for " + path);
}

std::vector<std::vector<double>> bipolar_targets(const Dataset& ds) {
    std::vector<std::vector<double>> targets(ds.size());
    for (std::size_t s = 0; s < ds.size(); ++s) {
        targets[s].assign(ds.class_count, -1.0);
        targets[s][ds.labels[s]] = 1.0;
    }
    return targets;
}

Dataset xor_dataset() {
    Dataset ds;
    ds.features = {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}};
    ds.labels = {0, 1, 1, 0};
    ds.class_count = 2;
    return ds;
}

Dataset gaussian_clusters(std::size_t classes, std::size_t dimension,
                          std::size_t n_per_class, double spread, std::uint64_t seed) {
    if (classes < 2 || dimension < 1 || n_per_class < 1 || spread < 0.0)
        throw InvalidParameters("gaussian_clusters: need classes >= 2, dimension >= 1, "
                                "n_per_class >= 1, spread >= 0");
    Dataset ds;
    ds.class_count = classes;
    ds.features.reserve(classes * n_per_class);
    ds.labels.reserve(classes * n_per_class);
    SplitMix64 center_rng(mix_seed(seed, 0));
    for (std::size_t c = 0; c < classes; ++c) {
        std::vector<double> center(dimension);
        for (double& v : center) v = center_rng.uniform();
        SplitMix64 point_rng(mix_seed(seed, c + 1));
        for (std::size_t i = 0; i < n_per_class; ++i) {
            std::vector<double> point(dimension);
            for (std::size_t j = 0; j < dimension; ++j)
                point[j] = center[j] + spread * point_rng.normal();
            ds.features.push_back(std::move(point));
            ds.labels.push_back(c);
        }
    }
    return ds;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction,
                                  std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw InvalidParameters("train_fraction must be in (0, 1)");
    if (ds.size() == 0) throw EmptyDataset("split: empty dataset");

    std::vector<std::size_t> order(ds.size());
    std::iota(order.begin(), order.end(), 0);
    SplitMix64 rng(seed);
    rng.shuffle(order);

    const auto cut = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(ds.size())));
    Dataset train, test;
    train.class_count = test.class_count = ds.class_count;
    train.feature_names = test.feature_names = ds.feature_names;
    for (std::size_t i = 0; i < order.size(); ++i) {
        Dataset& part = i < cut ? train : test;
        part.features.push_back(ds.features[order[i]]);
        part.labels.push_back(ds.labels[order[i]]);
    }
    return {std::move(train), std::move(test)};
}

}  // namespace pscnn
