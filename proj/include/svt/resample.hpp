#pragma once

#include <cstdint>
#include <string>

#include "svt/data.hpp"

namespace svt {

enum class ResampleMethod { duplicate, smote, borderline_smote1, adasyn };

ResampleMethod parse_resample_method(const std::string& name);
std::string to_string(ResampleMethod m);

struct ResampleConfig {
    ResampleMethod method = ResampleMethod::duplicate;
    int alpha = 1;  // target minority weight multiplier
    int k = 5;      // neighbors
    uint64_t seed = 0;
};

// Original rows pass through untouched, in order; synthetics are appended,
// grouped by minority sample index. Each minority sample index draws from
// its own RNG substream, so per-sample outputs are order-independent.
Dataset resample(const Dataset& data, const ResampleConfig& cfg);

Dataset duplicate_oversample(const Dataset& data, int alpha, uint64_t seed);
Dataset smote(const Dataset& data, int alpha, int k, uint64_t seed);
Dataset borderline_smote1(const Dataset& data, int alpha, int k, uint64_t seed);
Dataset adasyn(const Dataset& data, int alpha, int k, uint64_t seed);

}  // namespace svt
