#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pscnn/errors.hpp"

namespace pscnn {

enum class StepSchedule { Constant, InverseIteration };

struct TrainConfig {
    double step_size = 0.9;                               // rho_0
    StepSchedule schedule = StepSchedule::InverseIteration;  // rho(k) = rho_0 / k
    std::size_t epochs = 50;
    double init_half_range = 2.5;  // weights drawn uniform in [-r, +r]
    std::uint64_t seed = 0;
    bool shuffle_each_epoch = true;
};

/// Per-epoch mean squared error, (t - y)^2 averaged over samples and outputs,
/// taken at the moment each sample is visited (before its update).
struct TrainTrace {
    std::vector<double> epoch_mse;
    std::size_t epochs_run = 0;
};

/// One module's fully connected single-stage network: y = tanh(W x + b).
/// Outputs are strictly inside (-1, 1); dimensions are fixed at construction.
class SingleStageNet {
public:
    SingleStageNet() = default;
    SingleStageNet(std::size_t n_in, std::size_t n_out)
        : n_in_(n_in), n_out_(n_out), weights_(n_in * n_out, 0.0), biases_(n_out, 0.0) {
        if (n_in < 1 || n_out < 1)
            throw InvalidDimensions("net dimensions must be >= 1");
    }

    std::size_t n_in() const { return n_in_; }
    std::size_t n_out() const { return n_out_; }

    double weight(std::size_t out, std::size_t in) const { return weights_[out * n_in_ + in]; }
    double& weight(std::size_t out, std::size_t in) { return weights_[out * n_in_ + in]; }
    double bias(std::size_t out) const { return biases_[out]; }
    double& bias(std::size_t out) { return biases_[out]; }

    const std::vector<double>& weights_flat() const { return weights_; }
    std::vector<double>& weights_flat() { return weights_; }
    const std::vector<double>& biases() const { return biases_; }
    std::vector<double>& biases() { return biases_; }

    bool operator==(const SingleStageNet& other) const = default;

private:
    std::size_t n_in_ = 0;
    std::size_t n_out_ = 0;
    std::vector<double> weights_;  // row-major, n_out x n_in
    std::vector<double> biases_;
};

/// Net with weights and biases i.i.d. uniform on [-r, +r], r from the config.
/// Deterministic: same (n_in, n_out, seed) gives the identical net. Draw
/// order is weights row-major, then biases.
SingleStageNet init_net(std::size_t n_in, std::size_t n_out, const TrainConfig& config);

std::vector<double> forward(const SingleStageNet& net, std::span<const double> x);

/// One per-sample gradient step on E = 1/2 sum_j (t_j - y_j)^2:
///   w_ji += rho (t_j - y_j) f'(net_j) x_i,  b_j += rho (t_j - y_j) f'(net_j)
SingleStageNet delta_step(SingleStageNet net, std::span<const double> x,
                          std::span<const double> target, double rho);

/// Runs exactly config.epochs epochs of per-sample delta-rule updates.
/// Each epoch visits every sample once, in a freshly shuffled order when
/// shuffle_each_epoch is set, with rho taken from the schedule.
std::pair<SingleStageNet, TrainTrace> train(SingleStageNet net,
                                            const std::vector<std::vector<double>>& inputs,
                                            const std::vector<std::vector<double>>& targets,
                                            const TrainConfig& config);

/// Fraction of samples whose output argmax matches the target argmax, ties
/// to the lowest index. Single-output nets score by sign agreement instead.
double accuracy(const SingleStageNet& net, const std::vector<std::vector<double>>& inputs,
                const std::vector<std::vector<double>>& targets);

}  // namespace pscnn
