#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "pscnn/engine.hpp"

namespace pscnn {

namespace {

using nlohmann::json;

json net_to_json(const SingleStageNet& net) {
    return json{{"n_in", net.n_in()},
                {"n_out", net.n_out()},
                {"weights", net.weights_flat()},
                {"biases", net.biases()}};
}

SingleStageNet net_from_json(const json& j) {
    SingleStageNet net(j.at("n_in").get<std::size_t>(), j.at("n_out").get<std::size_t>());
    net.weights_flat() = j.at("weights").get<std::vector<double>>();
    net.biases() = j.at("biases").get<std::vector<double>>();
    if (net.weights_flat().size() != net.n_in() * net.n_out() ||
        net.biases().size() != net.n_out())
        throw CorruptModel("net weight or bias array has the wrong length");
    return net;
}

json regions_to_json(const NeuronRegions& r) {
    return json{{"def0_upper", r.def0_upper},
                {"ind0_upper", r.ind0_upper},
                {"ind1_lower", r.ind1_lower},
                {"def1_lower", r.def1_lower}};
}

NeuronRegions regions_from_json(const json& j) {
    NeuronRegions r;
    r.def0_upper = j.at("def0_upper").get<double>();
    r.ind0_upper = j.at("ind0_upper").get<double>();
    r.ind1_lower = j.at("ind1_lower").get<double>();
    r.def1_lower = j.at("def1_lower").get<double>();
    return r;
}

json module_to_json(const TrainedModule& m) {
    json regions = json::array();
    for (const NeuronRegions& r : m.regions) regions.push_back(regions_to_json(r));
    return json{{"index", m.module_index},
                {"transform", to_string(m.transform)},
                {"applications", m.applications},
                {"standalone_accuracy", m.standalone_accuracy},
                {"final_mse", m.final_mse},
                {"epochs_run", m.epochs_run},
                {"net", net_to_json(m.net)},
                {"regions", regions}};
}

TrainedModule module_from_json(const json& j) {
    TrainedModule m;
    m.module_index = j.at("index").get<std::size_t>();
    m.transform = transform_from_string(j.at("transform").get<std::string>());
    m.applications = j.at("applications").get<std::size_t>();
    m.standalone_accuracy = j.at("standalone_accuracy").get<double>();
    m.final_mse = j.at("final_mse").get<double>();
    m.epochs_run = j.at("epochs_run").get<std::size_t>();
    m.net = net_from_json(j.at("net"));
    for (const json& r : j.at("regions")) m.regions.push_back(regions_from_json(r));
    if (m.regions.size() != m.net.n_out())
        throw CorruptModel("region count does not match output neuron count");
    return m;
}

json config_to_json(const EnsembleConfig& c) {
    json j{{"module_count", c.module_count},
           {"transform", to_string(c.transform)},
           {"bits_per_feature", c.bits_per_feature},
           {"step_size", c.train.step_size},
           {"schedule", to_string(c.train.schedule)},
           {"epochs", c.train.epochs},
           {"init_half_range", c.train.init_half_range},
           {"shuffle_each_epoch", c.train.shuffle_each_epoch},
           {"max_modules", c.max_modules},
           {"improvement_epsilon", c.improvement_epsilon},
           {"trim_fraction", c.trim_fraction},
           {"combiner", to_string(c.combiner)},
           {"master_seed", c.master_seed},
           {"worker_count", c.worker_count},
           {"holdout_fraction", c.holdout_fraction}};
    j["target_accuracy"] = c.target_accuracy ? json(*c.target_accuracy) : json(nullptr);
    return j;
}

EnsembleConfig config_from_json(const json& j) {
    EnsembleConfig c;
    c.module_count = j.at("module_count").get<std::size_t>();
    c.transform = transform_from_string(j.at("transform").get<std::string>());
    c.bits_per_feature = j.at("bits_per_feature").get<unsigned>();
    c.train.step_size = j.at("step_size").get<double>();
    c.train.schedule = schedule_from_string(j.at("schedule").get<std::string>());
    c.train.epochs = j.at("epochs").get<std::size_t>();
    c.train.init_half_range = j.at("init_half_range").get<double>();
    c.train.shuffle_each_epoch = j.at("shuffle_each_epoch").get<bool>();
    c.max_modules = j.at("max_modules").get<std::size_t>();
    if (!j.at("target_accuracy").is_null())
        c.target_accuracy = j.at("target_accuracy").get<double>();
    c.improvement_epsilon = j.at("improvement_epsilon").get<double>();
    c.trim_fraction = j.at("trim_fraction").get<double>();
    c.combiner = combiner_from_string(j.at("combiner").get<std::string>());
    c.master_seed = j.at("master_seed").get<std::uint64_t>();
    c.worker_count = j.at("worker_count").get<unsigned>();
    c.holdout_fraction = j.at("holdout_fraction").get<double>();
    return c;
}

}  // namespace

void save_model(const EnsembleModel& model, const std::string& path) {
    if (model.modules.empty()) throw EmptyEnsemble("refusing to save a model with no modules");

    json ranges = json::array();
    for (const auto& [lo, hi] : model.quantization.ranges) ranges.push_back(json::array({lo, hi}));
    json modules = json::array();
    for (const TrainedModule& m : model.modules) modules.push_back(module_to_json(m));

    const json j{
        {"version", EnsembleModel::kFormatVersion},
        {"classes", model.class_count},
        {"combiner", to_string(model.combiner)},
        {"quantization",
         {{"bits_per_feature", model.quantization.bits_per_feature}, {"ranges", ranges}}},
        {"seeds", {{"master", model.master_seed}, {"modules", model.module_seeds}}},
        {"selection",
         {{"selected", model.selection.selected},
          {"accuracy_after", model.selection.accuracy_after},
          {"stop_reason", to_string(model.selection.stop_reason)}}},
        {"config", config_to_json(model.config)},
        {"modules", modules}};

    // write-then-rename so a failure never leaves a partial model file
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw IoError("cannot write " + tmp);
        out << j.dump(2) << '\n';
        if (!out) throw IoError("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot rename " + tmp + " to " + path);
    }
}

EnsembleModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw CorruptModel(path + ": " + e.what());
    }

    try {
        const int version = j.at("version").get<int>();
        if (version != EnsembleModel::kFormatVersion)
            throw VersionMismatch(path + ": format version " + std::to_string(version) +
                                  ", expected " +
                                  std::to_string(EnsembleModel::kFormatVersion));

        EnsembleModel model;
        model.class_count = j.at("classes").get<std::size_t>();
        model.combiner = combiner_from_string(j.at("combiner").get<std::string>());

        const json& quant = j.at("quantization");
        model.quantization.bits_per_feature = quant.at("bits_per_feature").get<unsigned>();
        for (const json& pair : quant.at("ranges"))
            model.quantization.ranges.emplace_back(pair.at(0).get<double>(),
                                                   pair.at(1).get<double>());
        model.quantization.validate();

        model.master_seed = j.at("seeds").at("master").get<std::uint64_t>();
        model.module_seeds = j.at("seeds").at("modules").get<std::vector<std::uint64_t>>();

        const json& sel = j.at("selection");
        model.selection.selected = sel.at("selected").get<std::vector<std::size_t>>();
        model.selection.accuracy_after = sel.at("accuracy_after").get<std::vector<double>>();
        model.selection.stop_reason =
            stop_reason_from_string(sel.at("stop_reason").get<std::string>());

        model.config = config_from_json(j.at("config"));

        for (const json& m : j.at("modules")) model.modules.push_back(module_from_json(m));
        if (model.modules.empty()) throw CorruptModel(path + ": model has no modules");
        for (const TrainedModule& m : model.modules) {
            if (m.net.n_in() != model.quantization.code_width())
                throw CorruptModel(path + ": module input width does not match quantization");
            if (m.net.n_out() != model.class_count)
                throw CorruptModel(path + ": module output count does not match classes");
        }
        return model;
    } catch (const json::exception& e) {
        throw CorruptModel(path + ": " + e.what());
    } catch (const InvalidParameters& e) {
        throw CorruptModel(path + ": " + e.what());
    }
}

}  // namespace pscnn
