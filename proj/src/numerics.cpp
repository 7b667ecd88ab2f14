#include "evconflict/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "evconflict/error.hpp"

namespace evc {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  require(data_.size() == rows_ * cols_, ErrorCode::Shape, "matrix data does not match its shape");
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double shift = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (double& v : p) {
    v = std::exp(v - shift);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

std::vector<double> affine(const Matrix& weights, std::span<const double> bias, std::span<const double> features) {
  require(weights.cols() == features.size() && weights.rows() == bias.size(), ErrorCode::Shape,
          "affine map dimensions disagree");
  std::vector<double> out(weights.rows());
  for (std::size_t i = 0; i < weights.rows(); ++i) {
    auto row = weights.row(i);
    double acc = bias[i];
    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * features[j];
    out[i] = acc;
  }
  return out;
}

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace evc
