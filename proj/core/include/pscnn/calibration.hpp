#pragma once

#include <vector>

#include "pscnn/errors.hpp"

namespace pscnn {

/// The five decision regions of an output neuron and their quantized values.
enum class RegionLabel { Definite0, Indefinite0, NoDecision, Indefinite1, Definite1 };

/// Quantized output of a region: {-1, -0.5, 0, +0.5, +1}.
double region_value(RegionLabel label);

const char* to_string(RegionLabel label);

/// Per-neuron region thresholds over the activation codomain [-1, 1].
/// Ordered def0_upper <= ind0_upper <= ind1_lower <= def1_lower, so the five
/// regions partition [-1, 1]:
///   a <  def0_upper                -> Definite0
///   def0_upper <= a < ind0_upper   -> Indefinite0
///   ind0_upper <= a <= ind1_lower  -> NoDecision
///   ind1_lower <  a <= def1_lower  -> Indefinite1
///   a >  def1_lower                -> Definite1
struct NeuronRegions {
    double def0_upper = 0.0;
    double ind0_upper = 0.0;
    double ind1_lower = 0.0;
    double def1_lower = 0.0;
};

/// Region thresholds from the post-training activations of one neuron.
/// activations1 are the activations of samples whose target for this neuron
/// is +1, activations0 those with target -1. Definite thresholds are strict:
/// no target-1 activation can fall in Definite0 and no target-0 activation in
/// Definite1. With trim_fraction 0 the indefinite bands are empty and only
/// Definite0 / NoDecision / Definite1 remain; a positive trim carves
/// indefinite bands out of the undecided middle at the given quantiles.
NeuronRegions calibrate_neuron(const std::vector<double>& activations0,
                               const std::vector<double>& activations1,
                               double trim_fraction);

/// Maps an activation in [-1, 1] to its region.
RegionLabel classify_region(const NeuronRegions& regions, double a);

/// Depth-refined output O = O_r + depth_r / width_r, where depth_r is the
/// distance of `a` above the region's lower boundary and width_r the region
/// width. Definite0 spans [-1, def0_upper] and Definite1 spans [def1_lower, 1]
/// for this purpose; a zero-width region contributes depth 0.
double refined_output(const NeuronRegions& regions, double a);

}  // namespace pscnn
