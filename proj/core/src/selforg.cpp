#include "pscnn/selforg.hpp"

#include <algorithm>

#include "pscnn/errors.hpp"

namespace pscnn {

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::TargetReached: return "target-reached";
        case StopReason::NoImprovement: return "no-improvement";
        case StopReason::CapReached: return "cap-reached";
        case StopReason::Exhausted: return "exhausted";
    }
    throw InvalidParameters("unknown stop reason");
}

StopReason stop_reason_from_string(const std::string& name) {
    if (name == "target-reached") return StopReason::TargetReached;
    if (name == "no-improvement") return StopReason::NoImprovement;
    if (name == "cap-reached") return StopReason::CapReached;
    if (name == "exhausted") return StopReason::Exhausted;
    throw InvalidParameters("unknown stop reason: " + name);
}

namespace {

// outputs[m][s] = module m's per-class refined outputs on sample s.
using OutputCube = std::vector<std::vector<std::vector<double>>>;

OutputCube precompute_outputs(const std::vector<TrainedModule>& modules,
                              const std::vector<BitVector>& inputs) {
    OutputCube cube(modules.size());
    for (std::size_t m = 0; m < modules.size(); ++m) {
        cube[m].reserve(inputs.size());
        for (const BitVector& code : inputs) cube[m].push_back(modules[m].refined_outputs(code));
    }
    return cube;
}

double subset_accuracy(const OutputCube& cube, const std::vector<std::size_t>& members,
                       const std::vector<std::size_t>& labels, CombinerKind combiner) {
    const std::size_t n = labels.size();
    std::size_t correct = 0;
    std::vector<std::vector<double>> stacked(members.size());
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t i = 0; i < members.size(); ++i) stacked[i] = cube[members[i]][s];
        const Decision d = decide(combine(combiner, stacked));
        if (!d.abstained() && *d.class_index == labels[s]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(n);
}

void check_eval_set(const std::vector<BitVector>& inputs, const std::vector<std::size_t>& labels) {
    if (inputs.empty()) throw EmptyDataset("selection: empty evaluation set");
    if (inputs.size() != labels.size())
        throw DimensionMismatch("selection: inputs and labels differ in length");
}

}  // namespace

double evaluate_ensemble(const std::vector<TrainedModule>& modules,
                         const std::vector<BitVector>& inputs,
                         const std::vector<std::size_t>& labels, CombinerKind combiner) {
    if (modules.empty()) throw EmptyEnsemble("evaluate_ensemble: no modules");
    check_eval_set(inputs, labels);
    const OutputCube cube = precompute_outputs(modules, inputs);
    std::vector<std::size_t> all(modules.size());
    for (std::size_t m = 0; m < modules.size(); ++m) all[m] = m;
    return subset_accuracy(cube, all, labels, combiner);
}

SelectionReport select_modules(const std::vector<TrainedModule>& modules,
                               const std::vector<BitVector>& inputs,
                               const std::vector<std::size_t>& labels, CombinerKind combiner,
                               const SelectionConfig& config) {
    if (modules.empty()) throw EmptyEnsemble("select_modules: no candidate modules");
    check_eval_set(inputs, labels);
    if (config.max_modules < 1) throw InvalidParameters("max_modules must be >= 1");
    if (config.improvement_epsilon < 0.0)
        throw InvalidParameters("improvement_epsilon must be >= 0");

    const OutputCube cube = precompute_outputs(modules, inputs);
    const std::size_t count = modules.size();

    SelectionReport report;
    std::vector<bool> in_use(count, false);
    std::vector<std::size_t> members;
    double current = -1.0;

    // Seed with the best single module, then grow greedily. Candidate scan is
    // in ascending index order with strict improvement, so ties go low.
    while (true) {
        std::size_t best_idx = count;
        double best_acc = -1.0;
        for (std::size_t m = 0; m < count; ++m) {
            if (in_use[m]) continue;
            members.push_back(m);
            const double acc = subset_accuracy(cube, members, labels, combiner);
            members.pop_back();
            if (acc > best_acc) {
                best_acc = acc;
                best_idx = m;
            }
        }
        const bool first = members.empty();
        if (!first && best_acc - current < config.improvement_epsilon) {
            report.stop_reason = StopReason::NoImprovement;
            break;
        }
        members.push_back(best_idx);
        in_use[best_idx] = true;
        current = best_acc;
        report.selected.push_back(best_idx);
        report.accuracy_after.push_back(current);

        if (config.target_accuracy && current >= *config.target_accuracy) {
            report.stop_reason = StopReason::TargetReached;
            break;
        }
        if (members.size() == count) {
            report.stop_reason = StopReason::Exhausted;
            break;
        }
        if (members.size() == config.max_modules) {
            report.stop_reason = StopReason::CapReached;
            break;
        }
    }
    return report;
}

}  // namespace pscnn
