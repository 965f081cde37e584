#include "pscnn/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pscnn {

double region_value(RegionLabel label) {
    switch (label) {
        case RegionLabel::Definite0: return -1.0;
        case RegionLabel::Indefinite0: return -0.5;
        case RegionLabel::NoDecision: return 0.0;
        case RegionLabel::Indefinite1: return 0.5;
        case RegionLabel::Definite1: return 1.0;
    }
    throw InvalidParameters("unknown region label");
}

const char* to_string(RegionLabel label) {
    switch (label) {
        case RegionLabel::Definite0: return "definite0";
        case RegionLabel::Indefinite0: return "indefinite0";
        case RegionLabel::NoDecision: return "no-decision";
        case RegionLabel::Indefinite1: return "indefinite1";
        case RegionLabel::Definite1: return "definite1";
    }
    throw InvalidParameters("unknown region label");
}

namespace {

// q-quantile of a list as sorted[floor(q * n)], clamped to the last element.
// q = 0 gives the minimum, q = 1 the maximum.
double quantile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(values.size())));
    idx = std::min(idx, values.size() - 1);
    return values[idx];
}

}  // namespace

NeuronRegions calibrate_neuron(const std::vector<double>& activations0,
                               const std::vector<double>& activations1,
                               double trim_fraction) {
    if (activations0.empty() && activations1.empty())
        throw BothListsEmpty("calibrate_neuron: no activations for either target");
    if (trim_fraction < 0.0 || trim_fraction >= 0.5)
        throw InvalidParameters("trim fraction must be in [0, 0.5)");

    NeuronRegions r;
    if (activations1.empty()) {
        // Neuron never saw a target-1 sample: it may claim definite 0 below
        // the evidence it has, but can never emit a definite (or indefinite) 1.
        r.def0_upper = *std::max_element(activations0.begin(), activations0.end());
        r.ind0_upper = r.def0_upper;
        r.ind1_lower = 1.0;
        r.def1_lower = 1.0;
        return r;
    }
    if (activations0.empty()) {
        r.def1_lower = *std::min_element(activations1.begin(), activations1.end());
        r.ind1_lower = r.def1_lower;
        r.ind0_upper = -1.0;
        r.def0_upper = -1.0;
        return r;
    }

    const double a = *std::min_element(activations1.begin(), activations1.end());
    const double b = *std::max_element(activations0.begin(), activations0.end());

    if (a > b) {
        // Separable: the literal threshold rules would cross the definite
        // regions over each other, so the empty gap becomes the undecided
        // region instead and no indefinite band is carved.
        r.def0_upper = b;
        r.ind0_upper = b;
        r.ind1_lower = a;
        r.def1_lower = a;
        return r;
    }

    // Overlapping activations. The strict thresholds pin the definite
    // regions; the indefinite bands are carved from within [a, b] at the
    // trim quantiles, and any overlap between them is undecided.
    r.def0_upper = a;
    r.def1_lower = b;
    const double i0 = std::clamp(quantile(activations1, trim_fraction), a, b);
    const double i1 = std::clamp(quantile(activations0, 1.0 - trim_fraction), a, b);
    r.ind0_upper = std::min(i0, i1);
    r.ind1_lower = std::max(i0, i1);
    return r;
}

RegionLabel classify_region(const NeuronRegions& regions, double a) {
    if (a < -1.0 || a > 1.0)
        throw OutOfCodomain("activation " + std::to_string(a) + " outside [-1, 1]");
    if (a < regions.def0_upper) return RegionLabel::Definite0;
    if (a < regions.ind0_upper) return RegionLabel::Indefinite0;
    if (a <= regions.ind1_lower) return RegionLabel::NoDecision;
    if (a <= regions.def1_lower) return RegionLabel::Indefinite1;
    return RegionLabel::Definite1;
}

double refined_output(const NeuronRegions& regions, double a) {
    const RegionLabel label = classify_region(regions, a);
    double lower = -1.0, upper = 1.0;
    switch (label) {
        case RegionLabel::Definite0: lower = -1.0; upper = regions.def0_upper; break;
        case RegionLabel::Indefinite0: lower = regions.def0_upper; upper = regions.ind0_upper; break;
        case RegionLabel::NoDecision: lower = regions.ind0_upper; upper = regions.ind1_lower; break;
        case RegionLabel::Indefinite1: lower = regions.ind1_lower; upper = regions.def1_lower; break;
        case RegionLabel::Definite1: lower = regions.def1_lower; upper = 1.0; break;
    }
    const double width = upper - lower;
    const double depth = width > 0.0 ? (a - lower) / width : 0.0;
    return region_value(label) + depth;
}

}  // namespace pscnn
