#include "pscnn/net.hpp"

#include <cmath>
#include <numeric>

#include "pscnn/rng.hpp"

namespace pscnn {

namespace {

// Stream tags separating the weight-init draws from the shuffle draws when
// both run off the same config seed.
constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kShuffleStream = 1;

void check_sample(const SingleStageNet& net, std::span<const double> x,
                  std::span<const double> t) {
    if (x.size() != net.n_in())
        throw DimensionMismatch("input length " + std::to_string(x.size()) +
                                " does not match n_in " + std::to_string(net.n_in()));
    if (t.size() != net.n_out())
        throw DimensionMismatch("target length " + std::to_string(t.size()) +
                                " does not match n_out " + std::to_string(net.n_out()));
}

// In-place update; accumulates the pre-update squared error of the sample.
void step_inplace(SingleStageNet& net, std::span<const double> x,
                  std::span<const double> t, double rho, double& squared_error) {
    const std::size_t n_in = net.n_in(), n_out = net.n_out();
    for (std::size_t j = 0; j < n_out; ++j) {
        double pre = net.bias(j);
        for (std::size_t i = 0; i < n_in; ++i) pre += net.weight(j, i) * x[i];
        const double y = std::tanh(pre);
        const double err = t[j] - y;
        squared_error += err * err;
        const double delta = rho * err * (1.0 - y * y);  // f'(net) = 1 - tanh^2
        for (std::size_t i = 0; i < n_in; ++i) net.weight(j, i) += delta * x[i];
        net.bias(j) += delta;
    }
}

}  // namespace

SingleStageNet init_net(std::size_t n_in, std::size_t n_out, const TrainConfig& config) {
    if (n_in < 1 || n_out < 1)
        throw InvalidDimensions("init_net: dimensions must be >= 1");
    if (config.init_half_range < 0.0)
        throw InvalidParameters("init_half_range must be >= 0");
    SingleStageNet net(n_in, n_out);
    SplitMix64 rng(mix_seed(config.seed, kInitStream));
    const double r = config.init_half_range;
    for (double& w : net.weights_flat()) w = rng.uniform(-r, r);
    for (double& b : net.biases()) b = rng.uniform(-r, r);
    return net;
}

std::vector<double> forward(const SingleStageNet& net, std::span<const double> x) {
    if (x.size() != net.n_in())
        throw DimensionMismatch("forward: input length " + std::to_string(x.size()) +
                                " does not match n_in " + std::to_string(net.n_in()));
    std::vector<double> y(net.n_out());
    for (std::size_t j = 0; j < net.n_out(); ++j) {
        double pre = net.bias(j);
        for (std::size_t i = 0; i < net.n_in(); ++i) pre += net.weight(j, i) * x[i];
        y[j] = std::tanh(pre);
    }
    return y;
}

SingleStageNet delta_step(SingleStageNet net, std::span<const double> x,
                          std::span<const double> target, double rho) {
    if (rho <= 0.0) throw InvalidParameters("step size must be > 0");
    check_sample(net, x, target);
    double ignored = 0.0;
    step_inplace(net, x, target, rho, ignored);
    return net;
}

std::pair<SingleStageNet, TrainTrace> train(SingleStageNet net,
                                            const std::vector<std::vector<double>>& inputs,
                                            const std::vector<std::vector<double>>& targets,
                                            const TrainConfig& config) {
    if (inputs.empty()) throw EmptyDataset("train: no samples");
    if (inputs.size() != targets.size())
        throw DimensionMismatch("train: inputs and targets differ in length");
    if (config.epochs < 1) throw InvalidParameters("train: epochs must be >= 1");
    if (config.step_size <= 0.0) throw InvalidParameters("train: step size must be > 0");
    for (std::size_t s = 0; s < inputs.size(); ++s)
        check_sample(net, inputs[s], targets[s]);

    const std::size_t n = inputs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    SplitMix64 shuffle_rng(mix_seed(config.seed, kShuffleStream));

    TrainTrace trace;
    trace.epoch_mse.reserve(config.epochs);
    for (std::size_t k = 1; k <= config.epochs; ++k) {
        const double rho = config.schedule == StepSchedule::Constant
                               ? config.step_size
                               : config.step_size / static_cast<double>(k);
        if (config.shuffle_each_epoch) shuffle_rng.shuffle(order);
        double sq = 0.0;
        for (std::size_t idx : order)
            step_inplace(net, inputs[idx], targets[idx], rho, sq);
        trace.epoch_mse.push_back(sq / static_cast<double>(n * net.n_out()));
    }
    trace.epochs_run = config.epochs;
    return {std::move(net), std::move(trace)};
}

double accuracy(const SingleStageNet& net, const std::vector<std::vector<double>>& inputs,
                const std::vector<std::vector<double>>& targets) {
    if (inputs.empty()) throw EmptyDataset("accuracy: no samples");
    if (inputs.size() != targets.size())
        throw DimensionMismatch("accuracy: inputs and targets differ in length");
    std::size_t correct = 0;
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        const auto y = forward(net, inputs[s]);
        const auto& t = targets[s];
        if (t.size() != y.size())
            throw DimensionMismatch("accuracy: target length does not match n_out");
        if (y.size() == 1) {
            if ((y[0] > 0.0) == (t[0] > 0.0)) ++correct;
            continue;
        }
        std::size_t y_arg = 0, t_arg = 0;
        for (std::size_t j = 1; j < y.size(); ++j) {
            if (y[j] > y[y_arg]) y_arg = j;
            if (t[j] > t[t_arg]) t_arg = j;
        }
        if (y_arg == t_arg) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(inputs.size());
}

}  // namespace pscnn
