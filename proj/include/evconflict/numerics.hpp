#pragma once

#include <span>
#include <vector>

#include "evconflict/matrix.hpp"

namespace evc {

/// Max-shifted softmax.
std::vector<double> softmax(std::span<const double> logits);

/// logits = weights * features + bias.
std::vector<double> affine(const Matrix& weights, std::span<const double> bias,
                           std::span<const double> features);

bool all_finite(std::span<const double> values);

}  // namespace evc
