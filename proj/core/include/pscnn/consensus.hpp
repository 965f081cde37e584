#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pscnn/errors.hpp"

namespace pscnn {

enum class CombinerKind { Mean, MajorityVote };

std::string to_string(CombinerKind kind);
CombinerKind combiner_from_string(const std::string& name);

/// Final classification. class_index is empty on abstention; otherwise it is
/// the argmax of per_class_scores with ties broken to the lowest index.
struct Decision {
    std::optional<std::size_t> class_index;
    double score = 0.0;  // highest combined value, also when abstaining
    std::vector<double> per_class_scores;

    bool abstained() const { return !class_index.has_value(); }
};

/// Componentwise arithmetic mean of the modules' per-class refined outputs.
std::vector<double> combine_mean(const std::vector<std::vector<double>>& module_outputs);

/// Each module casts one vote for its own argmax class, but only when its top
/// refined output is positive; modules whose best value is <= 0 abstain.
/// Returns vote counts normalized by the total number of modules.
std::vector<double> combine_majority(const std::vector<std::vector<double>>& module_outputs);

std::vector<double> combine(CombinerKind kind,
                            const std::vector<std::vector<double>>& module_outputs);

/// Argmax decision (ties to the lowest index); abstains when no entry
/// exceeds the threshold.
Decision decide(std::vector<double> combined, double abstain_threshold = 0.0);

}  // namespace pscnn
