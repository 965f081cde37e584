#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pscnn/consensus.hpp"
#include "pscnn/data.hpp"
#include "pscnn/module.hpp"
#include "pscnn/net.hpp"
#include "pscnn/selforg.hpp"
#include "pscnn/transforms.hpp"

namespace pscnn {

std::string to_string(StepSchedule schedule);
StepSchedule schedule_from_string(const std::string& name);

/// Everything that shapes one ensemble run. Per-module training seeds are
/// derived from master_seed, never taken from train.seed.
struct EnsembleConfig {
    std::size_t module_count = 4;
    TransformKind transform = TransformKind::GrayCode;
    unsigned bits_per_feature = 4;
    TrainConfig train;
    std::size_t max_modules = 0;  // 0 = no explicit cap (all modules)
    std::optional<double> target_accuracy;
    double improvement_epsilon = 0.0;
    double trim_fraction = 0.05;
    CombinerKind combiner = CombinerKind::Mean;
    std::uint64_t master_seed = 42;
    unsigned worker_count = 0;       // 0 = one per hardware thread
    double holdout_fraction = 0.0;   // held out from training for module selection
};

/// The persisted artifact: the selected modules plus everything needed to
/// reproduce their input view and combination.
struct EnsembleModel {
    static constexpr int kFormatVersion = 1;

    QuantizationSpec quantization;       // with the ranges observed at fit time
    std::vector<TrainedModule> modules;  // selected subset, ascending module index
    CombinerKind combiner = CombinerKind::Mean;
    std::size_t class_count = 0;
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> module_seeds;  // for all trained modules, by index
    SelectionReport selection;
    EnsembleConfig config;  // echo of the run configuration
};

struct Metrics {
    double accuracy = 0.0;      // abstentions count as errors
    double abstain_rate = 0.0;
    // confusion[true_class][predicted_class]; the extra last column counts
    // abstentions for that true class
    std::vector<std::vector<std::size_t>> confusion;
    std::vector<double> module_standalone;  // per selected module, on this dataset
};

/// seed_i = mix_seed(master_seed, i) for each module; see rng.hpp.
std::vector<std::uint64_t> derive_module_seeds(std::uint64_t master_seed, std::size_t count);

/// Trains every module independently (no selection): module i sees the input
/// transformed i times. Modules run concurrently on up to worker_count
/// workers; results are identical for any worker count.
std::vector<TrainedModule> train_all_modules(const Dataset& ds, const EnsembleConfig& config);

/// Full lifecycle: fit quantization, train all modules in parallel, calibrate,
/// then greedily select the consensus subset. The returned model carries only
/// the selected modules.
std::pair<EnsembleModel, SelectionReport> train_ensemble(const Dataset& ds,
                                                         const EnsembleConfig& config);

/// Quantizes x (clamping to the fitted ranges), runs every selected module
/// through its own transform pipeline and combines the refined outputs.
Decision predict(const EnsembleModel& model, std::span<const double> x);

Metrics evaluate(const EnsembleModel& model, const Dataset& ds);

/// Versioned JSON text format; writes to a temporary file and renames, so a
/// failed save never leaves a partial model behind.
void save_model(const EnsembleModel& model, const std::string& path);
EnsembleModel load_model(const std::string& path);

}  // namespace pscnn
