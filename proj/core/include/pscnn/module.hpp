#pragma once

#include <cstddef>
#include <vector>

#include "pscnn/bitvector.hpp"
#include "pscnn/calibration.hpp"
#include "pscnn/net.hpp"
#include "pscnn/transforms.hpp"

namespace pscnn {

/// One trained ensemble member: the transform pipeline it views the input
/// through, its trained net, and the calibrated regions of each output
/// neuron. Module k applies its transform k times.
struct TrainedModule {
    std::size_t module_index = 0;
    TransformKind transform = TransformKind::GrayCode;
    std::size_t applications = 0;  // == module_index
    SingleStageNet net;
    std::vector<NeuronRegions> regions;  // one per output neuron
    double final_mse = 0.0;              // training-trace summary
    std::size_t epochs_run = 0;
    double standalone_accuracy = 0.0;  // on the selection evaluation set

    /// Raw activations on an untransformed input code: applies the module's
    /// own pipeline, maps bits to bipolar values and runs the net.
    std::vector<double> activations(const BitVector& base_code) const {
        const BitVector transformed = apply_pipeline(transform, applications, base_code);
        const std::vector<double> x = to_bipolar(transformed);
        return forward(net, x);
    }

    /// Per-class refined outputs (region value plus depth) for an input code.
    std::vector<double> refined_outputs(const BitVector& base_code) const {
        std::vector<double> out = activations(base_code);
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] = refined_output(regions[j], out[j]);
        return out;
    }
};

}  // namespace pscnn
