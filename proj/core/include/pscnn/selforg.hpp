#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pscnn/bitvector.hpp"
#include "pscnn/consensus.hpp"
#include "pscnn/module.hpp"

namespace pscnn {

struct SelectionConfig {
    std::size_t max_modules = 1;
    std::optional<double> target_accuracy;  // stop once reached
    double improvement_epsilon = 0.0;       // minimum gain to keep adding
};

enum class StopReason { TargetReached, NoImprovement, CapReached, Exhausted };

std::string to_string(StopReason reason);
StopReason stop_reason_from_string(const std::string& name);

/// Outcome of greedy module selection. selected holds module indices in
/// inclusion order; accuracy_after[i] is the ensemble accuracy once
/// selected[0..i] are combined.
struct SelectionReport {
    std::vector<std::size_t> selected;
    std::vector<double> accuracy_after;
    StopReason stop_reason = StopReason::Exhausted;

    bool operator==(const SelectionReport& other) const = default;
};

/// Fraction of samples whose combined Decision matches the label; abstention
/// counts as incorrect.
double evaluate_ensemble(const std::vector<TrainedModule>& modules,
                         const std::vector<BitVector>& inputs,
                         const std::vector<std::size_t>& labels, CombinerKind combiner);

/// Greedy forward selection: starts from the best single module (ties to the
/// lowest index) and repeatedly adds the module whose inclusion raises
/// ensemble accuracy the most. Stops when the target accuracy is reached, the
/// best gain falls below improvement_epsilon, the cap is hit, or every module
/// is in. Deterministic for identical inputs.
SelectionReport select_modules(const std::vector<TrainedModule>& modules,
                               const std::vector<BitVector>& inputs,
                               const std::vector<std::size_t>& labels, CombinerKind combiner,
                               const SelectionConfig& config);

}  // namespace pscnn
