// pscnn command line: train / eval / predict / inspect / gendata.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pscnn/engine.hpp"

namespace {

using namespace pscnn;

std::string pipeline_name(TransformKind kind, std::size_t applications) {
    return to_string(kind) + "^" + std::to_string(applications);
}

std::string fixed4(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << v;
    return os.str();
}

// ---------------------------------------------------------------- train ----

struct TrainArgs {
    std::string data_path;
    std::string out_path;
    EnsembleConfig config;
    std::string transform = "gray";
    std::string schedule = "inv";
    std::string combiner = "mean";
};

void print_selection(const SelectionReport& report, const std::vector<TrainedModule>& modules) {
    std::cout << "selection:\n";
    std::cout << "  step  module  pipeline    accuracy\n";
    for (std::size_t i = 0; i < report.selected.size(); ++i) {
        const std::size_t idx = report.selected[i];
        std::string pipe;
        for (const TrainedModule& m : modules)
            if (m.module_index == idx) pipe = pipeline_name(m.transform, m.applications);
        std::cout << "  " << std::setw(4) << i + 1 << "  " << std::setw(6) << idx << "  "
                  << std::setw(8) << std::left << pipe << std::right << "  "
                  << std::setw(8) << fixed4(report.accuracy_after[i]) << "\n";
    }
    std::cout << "  stop reason: " << to_string(report.stop_reason) << "\n";
}

void print_metrics(const Metrics& metrics, const EnsembleModel& model) {
    std::cout << "  accuracy      " << fixed4(metrics.accuracy) << "\n";
    std::cout << "  abstain rate  " << fixed4(metrics.abstain_rate) << "\n";
    std::cout << "  confusion (rows = true class, last column = abstain):\n";
    for (std::size_t c = 0; c < metrics.confusion.size(); ++c) {
        std::cout << "    class " << c << ":";
        for (std::size_t p = 0; p < metrics.confusion[c].size(); ++p) {
            if (p + 1 == metrics.confusion[c].size()) std::cout << " |";
            std::cout << " " << metrics.confusion[c][p];
        }
        std::cout << "\n";
    }
    std::cout << "  module standalone accuracy:\n";
    for (std::size_t m = 0; m < model.modules.size(); ++m)
        std::cout << "    module " << model.modules[m].module_index << " ("
                  << pipeline_name(model.modules[m].transform, model.modules[m].applications)
                  << "): " << fixed4(metrics.module_standalone[m]) << "\n";
}

int run_train(const TrainArgs& args) {
    EnsembleConfig config = args.config;
    config.transform = transform_from_string(args.transform);
    config.train.schedule = schedule_from_string(args.schedule);
    config.combiner = combiner_from_string(args.combiner);

    const Dataset ds = load_csv(args.data_path);
    std::cout << "training " << config.module_count << " modules on " << args.data_path
              << " (" << ds.size() << " samples, " << ds.dimension() << " features, "
              << ds.class_count << " classes)\n";

    auto [model, report] = train_ensemble(ds, config);
    print_selection(report, model.modules);

    if (config.target_accuracy && report.accuracy_after.back() < *config.target_accuracy) {
        std::cerr << "error: target accuracy " << *config.target_accuracy
                  << " not reached (best " << report.accuracy_after.back()
                  << " with " << report.selected.size() << " modules)\n";
        return 3;
    }

    const Metrics metrics = evaluate(model, ds);
    std::cout << "metrics (training data):\n";
    print_metrics(metrics, model);

    save_model(model, args.out_path);
    std::cout << "model written to " << args.out_path << "\n";
    return 0;
}

// ----------------------------------------------------------------- eval ----

int run_eval(const std::string& model_path, const std::string& data_path,
             const std::string& format) {
    const EnsembleModel model = load_model(model_path);
    const Dataset ds = load_csv(data_path);
    const Metrics metrics = evaluate(model, ds);

    if (format == "csv") {
        std::cout << "accuracy,abstain_rate,samples\n"
                  << metrics.accuracy << ',' << metrics.abstain_rate << ',' << ds.size() << "\n";
        std::cout << "true_class";
        for (std::size_t c = 0; c < model.class_count; ++c) std::cout << ",pred_" << c;
        std::cout << ",abstain\n";
        for (std::size_t c = 0; c < metrics.confusion.size(); ++c) {
            std::cout << c;
            for (std::size_t v : metrics.confusion[c]) std::cout << ',' << v;
            std::cout << "\n";
        }
        return 0;
    }
    std::cout << "evaluation of " << model_path << " on " << data_path << " (" << ds.size()
              << " samples):\n";
    print_metrics(metrics, model);
    return 0;
}

// -------------------------------------------------------------- predict ----

std::vector<double> parse_input_vector(const std::string& text) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        const std::string cell = text.substr(start, comma - start);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc{} || ptr != cell.data() + cell.size())
            throw InvalidParameters("cannot parse '" + cell + "' in input vector");
        values.push_back(v);
        start = comma + 1;
    }
    return values;
}

int run_predict(const std::string& model_path, const std::string& input) {
    const EnsembleModel model = load_model(model_path);
    const std::vector<double> x = parse_input_vector(input);
    const Decision decision = predict(model, x);

    if (decision.abstained())
        std::cout << "class: abstain\n";
    else
        std::cout << "class: " << *decision.class_index << "\n";
    std::cout << "score: " << decision.score << "\n";
    std::cout << "per-class scores:";
    for (double s : decision.per_class_scores) std::cout << ' ' << s;
    std::cout << "\n";

    const BitVector code = quantize(x, model.quantization);
    for (const TrainedModule& module : model.modules) {
        std::cout << "module " << module.module_index << " ("
                  << pipeline_name(module.transform, module.applications) << "):";
        const std::vector<double> act = module.activations(code);
        for (std::size_t j = 0; j < act.size(); ++j)
            std::cout << ' ' << to_string(classify_region(module.regions[j], act[j]));
        std::cout << "\n";
    }
    return 0;
}

// -------------------------------------------------------------- inspect ----

int run_inspect(const std::string& model_path, const std::string& curves_path) {
    const EnsembleModel model = load_model(model_path);
    std::cout << "model: " << model_path << "\n";
    std::cout << "classes: " << model.class_count << ", combiner: " << to_string(model.combiner)
              << ", features: " << model.quantization.feature_count() << ", bits per feature: "
              << model.quantization.bits_per_feature << "\n";
    std::cout << "modules: " << model.modules.size() << " selected of "
              << model.config.module_count << " trained (stop: "
              << to_string(model.selection.stop_reason) << ")\n";
    for (const TrainedModule& m : model.modules) {
        std::cout << "module " << m.module_index << " ("
                  << pipeline_name(m.transform, m.applications) << "), standalone accuracy "
                  << fixed4(m.standalone_accuracy) << ", final mse " << m.final_mse
                  << ", epochs " << m.epochs_run << "\n";
        for (std::size_t j = 0; j < m.regions.size(); ++j) {
            const NeuronRegions& r = m.regions[j];
            std::cout << "  neuron " << j << ": def0_upper=" << r.def0_upper
                      << " ind0_upper=" << r.ind0_upper << " ind1_lower=" << r.ind1_lower
                      << " def1_lower=" << r.def1_lower << "\n";
        }
    }
    std::cout << "selection curve:\n";
    for (std::size_t i = 0; i < model.selection.accuracy_after.size(); ++i)
        std::cout << "  modules_used " << i + 1 << ": accuracy "
                  << fixed4(model.selection.accuracy_after[i]) << "\n";

    if (!curves_path.empty()) {
        std::ofstream out(curves_path);
        if (!out) throw IoError("cannot write " + curves_path);
        out << "modules_used,accuracy\n";
        for (std::size_t i = 0; i < model.selection.accuracy_after.size(); ++i)
            out << i + 1 << ',' << model.selection.accuracy_after[i] << "\n";
        if (!out) throw IoError("write failed for " + curves_path);
        std::cout << "selection curve written to " << curves_path << "\n";
    }
    return 0;
}

// -------------------------------------------------------------- gendata ----

int run_gendata(const std::string& kind, std::size_t classes, std::size_t dim, std::size_t n,
                double spread, std::uint64_t seed, const std::string& out_path) {
    Dataset ds;
    if (kind == "xor")
        ds = xor_dataset();
    else if (kind == "clusters")
        ds = gaussian_clusters(classes, dim, n, spread, seed);
    else
        throw InvalidParameters("unknown data kind: " + kind + " (expected xor|clusters)");
    save_csv(ds, out_path);
    std::cout << "wrote " << ds.size() << " samples (" << ds.dimension() << " features, "
              << ds.class_count << " classes) to " << out_path << "\n";
    return 0;
}

// ------------------------------------------------------------ exit codes ----

// 0 ok; 1 usage/parameters; 2 data or model file problem; 3 training or
// selection failure; 4 model/input dimension mismatch.
int map_error(const std::exception& e, int fallback) {
    if (dynamic_cast<const DimensionMismatch*>(&e)) return 4;
    if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
        dynamic_cast<const RaggedRow*>(&e) || dynamic_cast<const EmptyDataset*>(&e) ||
        dynamic_cast<const CorruptModel*>(&e) || dynamic_cast<const VersionMismatch*>(&e))
        return 2;
    if (dynamic_cast<const InvalidParameters*>(&e) ||
        dynamic_cast<const InvalidDimensions*>(&e) ||
        dynamic_cast<const OddWidthError*>(&e) || dynamic_cast<const EmptyVector*>(&e) ||
        dynamic_cast<const LengthMismatch*>(&e) || dynamic_cast<const EmptyEnsemble*>(&e))
        return 1;
    return fallback;
}

int guarded(int fallback, const std::function<int()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return map_error(e, fallback);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pscnn: consensual ensemble of single-stage nets over binary transforms"};
    app.require_subcommand(1);

    // train
    TrainArgs train_args;
    auto* train = app.add_subcommand("train", "train an ensemble and save the model");
    train->set_config("--config", "", "flat key = value file; flags override file values");
    train->add_option("--data", train_args.data_path, "training CSV (last column = label)")
        ->required();
    train->add_option("--out", train_args.out_path, "output model path")->required();
    train->add_option("--modules", train_args.config.module_count, "number of modules to train")
        ->capture_default_str();
    train->add_option("--transform", train_args.transform,
                      "input transform: identity|gray|shuffle|ones|twos")
        ->capture_default_str();
    train->add_option("--bits", train_args.config.bits_per_feature, "quantization bits per feature")
        ->capture_default_str();
    train->add_option("--step", train_args.config.train.step_size, "step size rho")
        ->capture_default_str();
    train->add_option("--schedule", train_args.schedule, "step schedule: const | inv (rho/k)")
        ->capture_default_str();
    train->add_option("--epochs", train_args.config.train.epochs, "training epochs per module")
        ->capture_default_str();
    train->add_option("--init-range", train_args.config.train.init_half_range,
                      "initial weights drawn uniform in [-r, r]")
        ->capture_default_str();
    train->add_option("--seed", train_args.config.master_seed, "master seed")
        ->capture_default_str();
    train->add_option("--jobs", train_args.config.worker_count,
                      "parallel training workers (0 = auto)")
        ->envname("PSCNN_JOBS")
        ->capture_default_str();
    train->add_option("--combiner", train_args.combiner, "consensus combiner: mean|majority")
        ->capture_default_str();
    train->add_option("--max-modules", train_args.config.max_modules,
                      "cap on selected modules (0 = no cap)")
        ->capture_default_str();
    train->add_option("--target-acc", train_args.config.target_accuracy,
                      "stop selection at this accuracy; fail if unreachable");
    train->add_option("--trim", train_args.config.trim_fraction,
                      "quantile trim for indefinite bands (0 = paper-literal regions)")
        ->capture_default_str();
    train->add_option("--holdout", train_args.config.holdout_fraction,
                      "fraction held out from training for module selection")
        ->capture_default_str();

    // eval
    std::string eval_model, eval_data, eval_format = "text";
    auto* eval = app.add_subcommand("eval", "evaluate a model on a dataset");
    eval->add_option("--model", eval_model, "model path")->required();
    eval->add_option("--data", eval_data, "dataset CSV")->required();
    eval->add_option("--format", eval_format, "output format: text|csv")->capture_default_str();

    // predict
    std::string predict_model, predict_input;
    auto* predict_cmd = app.add_subcommand("predict", "classify one input vector");
    predict_cmd->add_option("--model", predict_model, "model path")->required();
    predict_cmd->add_option("--input", predict_input, "comma-separated feature values")
        ->required();

    // inspect
    std::string inspect_model, inspect_curves;
    auto* inspect = app.add_subcommand("inspect", "print model structure and regions");
    inspect->add_option("--model", inspect_model, "model path")->required();
    inspect->add_option("--curves", inspect_curves,
                        "write accuracy-vs-module-count CSV to this path");

    // gendata
    std::string gen_kind, gen_out;
    std::size_t gen_classes = 4, gen_dim = 64, gen_n = 200;
    double gen_spread = 0.25;
    std::uint64_t gen_seed = 42;
    auto* gendata = app.add_subcommand("gendata", "generate a built-in dataset as CSV");
    gendata->add_option("--kind", gen_kind, "dataset kind: xor|clusters")->required();
    gendata->add_option("--classes", gen_classes, "cluster classes")->capture_default_str();
    gendata->add_option("--dim", gen_dim, "feature dimension")->capture_default_str();
    gendata->add_option("--n", gen_n, "samples per class")->capture_default_str();
    gendata->add_option("--spread", gen_spread, "cluster standard deviation")
        ->capture_default_str();
    gendata->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
    gendata->add_option("--out", gen_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "run '" << argv[0] << " --help' for usage\n";
        return 1;
    }

    if (train->parsed()) return guarded(3, [&] { return run_train(train_args); });
    if (eval->parsed()) {
        if (eval_format != "text" && eval_format != "csv") {
            std::cerr << "error: --format must be text or csv\n";
            return 1;
        }
        return guarded(2, [&] { return run_eval(eval_model, eval_data, eval_format); });
    }
    if (predict_cmd->parsed())
        return guarded(1, [&] { return run_predict(predict_model, predict_input); });
    if (inspect->parsed())
        return guarded(2, [&] { return run_inspect(inspect_model, inspect_curves); });
    if (gendata->parsed())
        return guarded(1, [&] {
            return run_gendata(gen_kind, gen_classes, gen_dim, gen_n, gen_spread, gen_seed,
                               gen_out);
        });
    return 1;
}
