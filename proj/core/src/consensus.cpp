#include "pscnn/consensus.hpp"

namespace pscnn {

std::string to_string(CombinerKind kind) {
    return kind == CombinerKind::Mean ? "mean" : "majority";
}

CombinerKind combiner_from_string(const std::string& name) {
    if (name == "mean") return CombinerKind::Mean;
    if (name == "majority") return CombinerKind::MajorityVote;
    throw InvalidParameters("unknown combiner: " + name + " (expected mean|majority)");
}

namespace {

std::size_t checked_class_count(const std::vector<std::vector<double>>& module_outputs) {
    if (module_outputs.empty()) throw EmptyEnsemble("no module outputs to combine");
    const std::size_t n = module_outputs.front().size();
    for (const auto& v : module_outputs)
        if (v.size() != n)
            throw LengthMismatch("module output vectors differ in length");
    return n;
}

std::size_t argmax(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

}  // namespace

std::vector<double> combine_mean(const std::vector<std::vector<double>>& module_outputs) {
    const std::size_t classes = checked_class_count(module_outputs);
    std::vector<double> mean(classes, 0.0);
    for (const auto& v : module_outputs)
        for (std::size_t c = 0; c < classes; ++c) mean[c] += v[c];
    for (double& m : mean) m /= static_cast<double>(module_outputs.size());
    return mean;
}

std::vector<double> combine_majority(const std::vector<std::vector<double>>& module_outputs) {
    const std::size_t classes = checked_class_count(module_outputs);
    std::vector<double> votes(classes, 0.0);
    for (const auto& v : module_outputs) {
        const std::size_t top = argmax(v);
        if (v[top] > 0.0) votes[top] += 1.0;
    }
    for (double& v : votes) v /= static_cast<double>(module_outputs.size());
    return votes;
}

std::vector<double> combine(CombinerKind kind,
                            const std::vector<std::vector<double>>& module_outputs) {
    return kind == CombinerKind::Mean ? combine_mean(module_outputs)
                                      : combine_majority(module_outputs);
}

Decision decide(std::vector<double> combined, double abstain_threshold) {
    if (combined.empty()) throw EmptyVector("decide: empty score vector");
    Decision d;
    const std::size_t best = argmax(combined);
    d.score = combined[best];
    if (combined[best] > abstain_threshold) d.class_index = best;
    d.per_class_scores = std::move(combined);
    return d;
}

}  // namespace pscnn
