#include "pscnn/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "pscnn/rng.hpp"

namespace pscnn {

std::string to_string(StepSchedule schedule) {
    return schedule == StepSchedule::Constant ? "const" : "inv";
}

StepSchedule schedule_from_string(const std::string& name) {
    if (name == "const") return StepSchedule::Constant;
    if (name == "inv") return StepSchedule::InverseIteration;
    throw InvalidParameters("unknown schedule: " + name + " (expected const|inv)");
}

namespace {

void validate_dataset(const Dataset& ds) {
    if (ds.size() == 0) throw EmptyDataset("dataset has no samples");
    if (ds.class_count < 1) throw InvalidParameters("dataset has no classes");
    if (ds.labels.size() != ds.features.size())
        throw DimensionMismatch("dataset labels and features differ in length");
    const std::size_t dim = ds.dimension();
    for (const auto& row : ds.features)
        if (row.size() != dim) throw DimensionMismatch("dataset rows differ in length");
    for (std::size_t label : ds.labels)
        if (label >= ds.class_count)
            throw InvalidParameters("label " + std::to_string(label) + " out of range");
}

void validate_config(const EnsembleConfig& config) {
    if (config.module_count < 1) throw InvalidParameters("module_count must be >= 1");
    if (config.trim_fraction < 0.0 || config.trim_fraction >= 0.5)
        throw InvalidParameters("trim_fraction must be in [0, 0.5)");
    if (config.holdout_fraction < 0.0 || config.holdout_fraction >= 1.0)
        throw InvalidParameters("holdout_fraction must be in [0, 1)");
    if (config.improvement_epsilon < 0.0)
        throw InvalidParameters("improvement_epsilon must be >= 0");
    if (config.target_accuracy && (*config.target_accuracy < 0.0 || *config.target_accuracy > 1.0))
        throw InvalidParameters("target_accuracy must be in [0, 1]");
}

// Runs fn(0..tasks-1) on a fixed pool. Tasks share nothing mutable, so the
// outcome is schedule-independent; the first exception wins and is rethrown
// after all workers join.
void run_parallel(std::size_t tasks, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, tasks));
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < tasks;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<BitVector> quantize_all(const Dataset& ds, const QuantizationSpec& spec) {
    std::vector<BitVector> codes;
    codes.reserve(ds.size());
    for (const auto& row : ds.features) codes.push_back(quantize(row, spec));
    return codes;
}

TrainedModule train_one_module(std::size_t index, const EnsembleConfig& config,
                               const std::vector<BitVector>& codes,
                               const std::vector<std::vector<double>>& targets,
                               const std::vector<std::size_t>& labels,
                               std::uint64_t seed) {
    const std::size_t classes = targets.front().size();

    std::vector<std::vector<double>> inputs;
    inputs.reserve(codes.size());
    for (const BitVector& code : codes)
        inputs.push_back(to_bipolar(apply_pipeline(config.transform, index, code)));

    TrainConfig train_cfg = config.train;
    train_cfg.seed = seed;
    SingleStageNet net = init_net(inputs.front().size(), classes, train_cfg);
    auto [trained, trace] = train(std::move(net), inputs, targets, train_cfg);

    // Calibrate each output neuron on the post-training activations.
    std::vector<std::vector<double>> activations;
    activations.reserve(inputs.size());
    for (const auto& x : inputs) activations.push_back(forward(trained, x));

    TrainedModule module;
    module.module_index = index;
    module.transform = config.transform;
    module.applications = index;
    module.net = std::move(trained);
    module.final_mse = trace.epoch_mse.back();
    module.epochs_run = trace.epochs_run;
    module.regions.resize(classes);
    for (std::size_t j = 0; j < classes; ++j) {
        std::vector<double> act0, act1;
        for (std::size_t s = 0; s < activations.size(); ++s)
            (labels[s] == j ? act1 : act0).push_back(activations[s][j]);
        module.regions[j] = calibrate_neuron(act0, act1, config.trim_fraction);
    }
    return module;
}

}  // namespace

std::vector<std::uint64_t> derive_module_seeds(std::uint64_t master_seed, std::size_t count) {
    std::vector<std::uint64_t> seeds(count);
    for (std::size_t i = 0; i < count; ++i) seeds[i] = mix_seed(master_seed, i);
    return seeds;
}

std::vector<TrainedModule> train_all_modules(const Dataset& ds, const EnsembleConfig& config) {
    validate_dataset(ds);
    validate_config(config);

    const QuantizationSpec spec = fit_quantization(ds.features, config.bits_per_feature);
    const std::vector<BitVector> codes = quantize_all(ds, spec);
    const auto targets = bipolar_targets(ds);
    const auto seeds = derive_module_seeds(config.master_seed, config.module_count);

    std::vector<TrainedModule> modules(config.module_count);
    run_parallel(config.module_count, config.worker_count, [&](std::size_t i) {
        modules[i] = train_one_module(i, config, codes, targets, ds.labels, seeds[i]);
    });
    for (TrainedModule& module : modules)
        module.standalone_accuracy =
            evaluate_ensemble({module}, codes, ds.labels, config.combiner);
    return modules;
}

std::pair<EnsembleModel, SelectionReport> train_ensemble(const Dataset& ds,
                                                         const EnsembleConfig& config) {
    validate_dataset(ds);
    validate_config(config);

    // With a holdout, modules train on the remainder and selection scores on
    // the held-out part; otherwise both use the full training data.
    Dataset train_part = ds;
    Dataset selection_part;
    const bool holdout = config.holdout_fraction > 0.0;
    if (holdout) {
        auto [tr, sel] = split(ds, 1.0 - config.holdout_fraction,
                               mix_seed(config.master_seed, 0x5eed));
        if (tr.size() == 0 || sel.size() == 0)
            throw InvalidParameters("holdout_fraction leaves an empty partition");
        train_part = std::move(tr);
        selection_part = std::move(sel);
    }

    std::vector<TrainedModule> modules = train_all_modules(train_part, config);
    const QuantizationSpec spec = fit_quantization(train_part.features, config.bits_per_feature);

    const Dataset& sel_ds = holdout ? selection_part : train_part;
    const std::vector<BitVector> sel_codes = quantize_all(sel_ds, spec);
    if (holdout) {
        for (TrainedModule& module : modules)
            module.standalone_accuracy =
                evaluate_ensemble({module}, sel_codes, sel_ds.labels, config.combiner);
    }

    SelectionConfig sel_cfg;
    sel_cfg.max_modules =
        config.max_modules == 0 ? config.module_count
                                : std::min(config.max_modules, config.module_count);
    sel_cfg.target_accuracy = config.target_accuracy;
    sel_cfg.improvement_epsilon = config.improvement_epsilon;
    SelectionReport report =
        select_modules(modules, sel_codes, sel_ds.labels, config.combiner, sel_cfg);

    EnsembleModel model;
    model.quantization = spec;
    model.combiner = config.combiner;
    model.class_count = train_part.class_count;
    model.master_seed = config.master_seed;
    model.module_seeds = derive_module_seeds(config.master_seed, config.module_count);
    model.selection = report;
    model.config = config;
    std::vector<std::size_t> keep = report.selected;
    std::sort(keep.begin(), keep.end());
    for (std::size_t index : keep) model.modules.push_back(std::move(modules[index]));
    return {std::move(model), std::move(report)};
}

Decision predict(const EnsembleModel& model, std::span<const double> x) {
    if (model.modules.empty()) throw EmptyEnsemble("model has no modules");
    if (x.size() != model.quantization.feature_count())
        throw DimensionMismatch("input has " + std::to_string(x.size()) +
                                " features, model expects " +
                                std::to_string(model.quantization.feature_count()));
    const BitVector code = quantize(x, model.quantization);
    std::vector<std::vector<double>> outputs;
    outputs.reserve(model.modules.size());
    for (const TrainedModule& module : model.modules)
        outputs.push_back(module.refined_outputs(code));
    return decide(combine(model.combiner, outputs));
}

Metrics evaluate(const EnsembleModel& model, const Dataset& ds) {
    validate_dataset(ds);
    if (ds.dimension() != model.quantization.feature_count())
        throw DimensionMismatch("dataset dimension does not match model");
    if (ds.class_count > model.class_count)
        throw DimensionMismatch("dataset has more classes than the model");

    Metrics metrics;
    metrics.confusion.assign(model.class_count,
                             std::vector<std::size_t>(model.class_count + 1, 0));
    std::size_t correct = 0, abstained = 0;
    for (std::size_t s = 0; s < ds.size(); ++s) {
        const Decision d = predict(model, ds.features[s]);
        if (d.abstained()) {
            ++abstained;
            metrics.confusion[ds.labels[s]][model.class_count] += 1;
        } else {
            metrics.confusion[ds.labels[s]][*d.class_index] += 1;
            if (*d.class_index == ds.labels[s]) ++correct;
        }
    }
    const auto n = static_cast<double>(ds.size());
    metrics.accuracy = static_cast<double>(correct) / n;
    metrics.abstain_rate = static_cast<double>(abstained) / n;

    const std::vector<BitVector> codes = quantize_all(ds, model.quantization);
    metrics.module_standalone.reserve(model.modules.size());
    for (const TrainedModule& module : model.modules)
        metrics.module_standalone.push_back(
            evaluate_ensemble({module}, codes, ds.labels, model.combiner));
    return metrics;
}

}  // namespace pscnn
