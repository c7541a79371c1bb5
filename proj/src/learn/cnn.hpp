/* Copyright 2026 The dfusion Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/dataset.hpp"
#include "core/rng.hpp"
#include "learn/common.hpp"

namespace dfusion {

struct CnnConfig {
  std::size_t input_rows = 128;  // mel bands
  std::size_t input_cols = 128;  // frames
  std::vector<std::size_t> conv_filters = {8, 16};
  std::size_t dense_units = 64;
  double dropout = 0.3;
  std::size_t batch_size = 16;
  double learning_rate = 0.01;
  double momentum = 0.9;
  int epochs = 10;
};

// Conv blocks (3x3 valid convolution, rectifier, 2x2 max pooling), flatten,
// dense rectifier layer, dropout (training only), logistic output.
//
// Flat parameter order: for each conv block the kernels
// w[f][c][ky][kx] then biases b[f]; then dense weights w[u][i] and biases;
// then output weights w[u] and the output bias.
struct CnnModel {
  CnnConfig config;
  std::vector<double> params;
  double input_mean = 0.0;  // scalar standardization of every input cell
  double input_std = 1.0;
  std::uint64_t seed = 0;
  TrainingHistory history;
};

struct CnnShape {
  struct Block {
    std::size_t in_channels, filters;
    std::size_t in_rows, in_cols;      // input to the convolution
    std::size_t conv_rows, conv_cols;  // after convolution
    std::size_t pool_rows, pool_cols;  // after pooling
    std::size_t weight_offset, bias_offset;
  };
  std::vector<Block> blocks;
  std::size_t flat = 0;
  std::size_t dense_w = 0, dense_b = 0, out_w = 0, out_b = 0;
  std::size_t total = 0;
};

// Throws InvalidArgument when the spatial size collapses below 1.
CnnShape ComputeCnnShape(const CnnConfig& config);

// Zero-initialized parameters.
CnnModel MakeCnn(const CnnConfig& config);

// Inference with dropout disabled. `input` is the raw (rows x cols)
// row-major matrix; the model's standardization is applied internally.
double CnnForward(const CnnModel& model, std::span<const double> input);

// Valid 3x3 convolution (cross-correlation) of one multi-channel input.
// Output is filters x (rows-2) x (cols-2), pre-activation.
std::vector<double> Conv3x3(std::span<const double> input, std::size_t channels,
                            std::size_t rows, std::size_t cols,
                            std::span<const double> kernels,
                            std::span<const double> biases,
                            std::size_t filters);

// Mean BCE and gradient over raw inputs. When `dropout_rng` is null dropout
// is disabled.
double CnnLossAndGradient(const CnnModel& model,
                          const std::vector<std::span<const double>>& inputs,
                          std::span<const int> labels,
                          std::vector<double>& grad,
                          SeededRng* dropout_rng = nullptr);

// Rows of `train` must be (input_rows x input_cols) matrices.
CnnModel TrainCnn(const Dataset& train, const CnnConfig& config,
                  SeededRng& rng);

// Center-crop or pad the time axis (columns) of a bands x frames matrix to
// `cols`, filling padding with `pad_value`.
std::vector<double> FitColumns(std::span<const double> m, std::size_t rows,
                               std::size_t cols_in, std::size_t cols,
                               double pad_value);

}  // namespace dfusion
