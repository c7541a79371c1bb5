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

#include "learn/cnn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"

namespace dfusion {

CnnShape ComputeCnnShape(const CnnConfig& config) {
  CnnShape shape;
  std::size_t channels = 1;
  std::size_t rows = config.input_rows;
  std::size_t cols = config.input_cols;
  std::size_t offset = 0;
  if (config.conv_filters.empty()) {
    throw InvalidArgument("CNN: at least one conv block is required");
  }
  for (std::size_t filters : config.conv_filters) {
    if (filters == 0 || rows < 4 || cols < 4) {
      throw InvalidArgument("CNN: input too small for the conv stack");
    }
    CnnShape::Block b;
    b.in_channels = channels;
    b.filters = filters;
    b.in_rows = rows;
    b.in_cols = cols;
    b.conv_rows = rows - 2;
    b.conv_cols = cols - 2;
    b.pool_rows = b.conv_rows / 2;
    b.pool_cols = b.conv_cols / 2;
    b.weight_offset = offset;
    offset += filters * channels * 9;
    b.bias_offset = offset;
    offset += filters;
    shape.blocks.push_back(b);
    channels = filters;
    rows = b.pool_rows;
    cols = b.pool_cols;
  }
  if (config.dense_units == 0) throw InvalidArgument("CNN: dense_units is 0");
  shape.flat = channels * rows * cols;
  shape.dense_w = offset;
  offset += config.dense_units * shape.flat;
  shape.dense_b = offset;
  offset += config.dense_units;
  shape.out_w = offset;
  offset += config.dense_units;
  shape.out_b = offset;
  offset += 1;
  shape.total = offset;
  return shape;
}

CnnModel MakeCnn(const CnnConfig& config) {
  CnnModel m;
  m.config = config;
  m.params.assign(ComputeCnnShape(config).total, 0.0);
  return m;
}

std::vector<double> Conv3x3(std::span<const double> input, std::size_t channels,
                            std::size_t rows, std::size_t cols,
                            std::span<const double> kernels,
                            std::span<const double> biases,
                            std::size_t filters) {
  const std::size_t out_rows = rows - 2;
  const std::size_t out_cols = cols - 2;
  std::vector<double> out(filters * out_rows * out_cols);
  for (std::size_t f = 0; f < filters; ++f) {
    double* o = out.data() + f * out_rows * out_cols;
    std::fill(o, o + out_rows * out_cols, biases[f]);
    for (std::size_t c = 0; c < channels; ++c) {
      const double* in = input.data() + c * rows * cols;
      const double* k = kernels.data() + (f * channels + c) * 9;
      for (std::size_t y = 0; y < out_rows; ++y) {
        double* orow = o + y * out_cols;
        for (std::size_t ky = 0; ky < 3; ++ky) {
          const double* irow = in + (y + ky) * cols;
          const double k0 = k[ky * 3], k1 = k[ky * 3 + 1], k2 = k[ky * 3 + 2];
          for (std::size_t x = 0; x < out_cols; ++x) {
            orow[x] += k0 * irow[x] + k1 * irow[x + 1] + k2 * irow[x + 2];
          }
        }
      }
    }
  }
  return out;
}

namespace {

struct BlockCache {
  std::vector<double> input;   // block input
  std::vector<double> conv;    // post-rectifier convolution output
  std::vector<std::size_t> argmax;  // per pooled cell, index into conv
  std::vector<double> pooled;
};

struct ForwardCache {
  std::vector<BlockCache> blocks;
  std::vector<double> hidden;  // dense activations after rectifier+dropout
  std::vector<double> mask;    // dropout scale per unit (0 or 1/(1-p))
  double prob = 0.0;
};

std::vector<double> Standardize(const CnnModel& model,
                                std::span<const double> input) {
  const std::size_t expected = model.config.input_rows * model.config.input_cols;
  if (input.size() != expected) {
    throw InvalidArgument("CNN input has " + std::to_string(input.size()) +
                          " cells, expected " + std::to_string(expected));
  }
  std::vector<double> x(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    x[i] = (input[i] - model.input_mean) / model.input_std;
  }
  return x;
}

ForwardCache Forward(const CnnModel& model, const CnnShape& shape,
                     std::span<const double> input, SeededRng* dropout_rng) {
  ForwardCache cache;
  std::vector<double> x = Standardize(model, input);
  const double* p = model.params.data();
  for (const CnnShape::Block& b : shape.blocks) {
    BlockCache bc;
    bc.input = std::move(x);
    bc.conv = Conv3x3(bc.input, b.in_channels, b.in_rows, b.in_cols,
                      {p + b.weight_offset, b.filters * b.in_channels * 9},
                      {p + b.bias_offset, b.filters}, b.filters);
    for (double& v : bc.conv) v = std::max(0.0, v);
    bc.pooled.resize(b.filters * b.pool_rows * b.pool_cols);
    bc.argmax.resize(bc.pooled.size());
    for (std::size_t f = 0; f < b.filters; ++f) {
      for (std::size_t y = 0; y < b.pool_rows; ++y) {
        for (std::size_t xx = 0; xx < b.pool_cols; ++xx) {
          std::size_t best = f * b.conv_rows * b.conv_cols +
                             (2 * y) * b.conv_cols + 2 * xx;
          for (std::size_t dy = 0; dy < 2; ++dy) {
            for (std::size_t dx = 0; dx < 2; ++dx) {
              const std::size_t idx = f * b.conv_rows * b.conv_cols +
                                      (2 * y + dy) * b.conv_cols + 2 * xx + dx;
              if (bc.conv[idx] > bc.conv[best]) best = idx;
            }
          }
          const std::size_t out = (f * b.pool_rows + y) * b.pool_cols + xx;
          bc.pooled[out] = bc.conv[best];
          bc.argmax[out] = best;
        }
      }
    }
    x = bc.pooled;
    cache.blocks.push_back(std::move(bc));
  }

  const std::size_t units = model.config.dense_units;
  cache.hidden.assign(units, 0.0);
  cache.mask.assign(units, 1.0);
  const double keep = 1.0 - model.config.dropout;
  double z_out = p[shape.out_b];
  for (std::size_t u = 0; u < units; ++u) {
    const double* w = p + shape.dense_w + u * shape.flat;
    double z = p[shape.dense_b + u];
    for (std::size_t i = 0; i < shape.flat; ++i) z += w[i] * x[i];
    double a = std::max(0.0, z);
    if (dropout_rng != nullptr && model.config.dropout > 0.0) {
      cache.mask[u] = dropout_rng->Uniform() < keep ? 1.0 / keep : 0.0;
      a *= cache.mask[u];
    }
    cache.hidden[u] = a;
    z_out += p[shape.out_w + u] * a;
  }
  cache.prob = Sigmoid(z_out);
  return cache;
}

}  // namespace

double CnnForward(const CnnModel& model, std::span<const double> input) {
  const CnnShape shape = ComputeCnnShape(model.config);
  return Forward(model, shape, input, nullptr).prob;
}

double CnnLossAndGradient(const CnnModel& model,
                          const std::vector<std::span<const double>>& inputs,
                          std::span<const int> labels,
                          std::vector<double>& grad, SeededRng* dropout_rng) {
  const CnnShape shape = ComputeCnnShape(model.config);
  grad.assign(shape.total, 0.0);
  const double* p = model.params.data();
  const double scale = 1.0 / static_cast<double>(inputs.size());
  std::vector<double> probs;
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    ForwardCache cache = Forward(model, shape, inputs[s], dropout_rng);
    probs.push_back(cache.prob);
    const double dz_out = (cache.prob - labels[s]) * scale;
    const std::vector<double>& flat = cache.blocks.back().pooled;

    grad[shape.out_b] += dz_out;
    std::vector<double> dflat(shape.flat, 0.0);
    for (std::size_t u = 0; u < model.config.dense_units; ++u) {
      grad[shape.out_w + u] += dz_out * cache.hidden[u];
      if (cache.hidden[u] <= 0.0) continue;  // rectifier off or dropped
      const double dz = dz_out * p[shape.out_w + u] * cache.mask[u];
      grad[shape.dense_b + u] += dz;
      double* gw = grad.data() + shape.dense_w + u * shape.flat;
      const double* w = p + shape.dense_w + u * shape.flat;
      for (std::size_t i = 0; i < shape.flat; ++i) {
        gw[i] += dz * flat[i];
        dflat[i] += dz * w[i];
      }
    }

    std::vector<double> dpooled = std::move(dflat);
    for (std::size_t bi = shape.blocks.size(); bi-- > 0;) {
      const CnnShape::Block& b = shape.blocks[bi];
      const BlockCache& bc = cache.blocks[bi];
      std::vector<double> dconv(bc.conv.size(), 0.0);
      for (std::size_t i = 0; i < dpooled.size(); ++i) {
        if (bc.conv[bc.argmax[i]] > 0.0) dconv[bc.argmax[i]] += dpooled[i];
      }
      const bool need_input_grad = bi > 0;
      std::vector<double> dinput(need_input_grad ? bc.input.size() : 0, 0.0);
      for (std::size_t f = 0; f < b.filters; ++f) {
        const double* d = dconv.data() + f * b.conv_rows * b.conv_cols;
        double bias_grad = 0.0;
        for (std::size_t i = 0; i < b.conv_rows * b.conv_cols; ++i) {
          bias_grad += d[i];
        }
        grad[b.bias_offset + f] += bias_grad;
        for (std::size_t c = 0; c < b.in_channels; ++c) {
          const double* in = bc.input.data() + c * b.in_rows * b.in_cols;
          double* gk = grad.data() + b.weight_offset + (f * b.in_channels + c) * 9;
          const double* k = p + b.weight_offset + (f * b.in_channels + c) * 9;
          double* din = need_input_grad
                            ? dinput.data() + c * b.in_rows * b.in_cols
                            : nullptr;
          for (std::size_t ky = 0; ky < 3; ++ky) {
            for (std::size_t kx = 0; kx < 3; ++kx) {
              double acc = 0.0;
              const double kv = k[ky * 3 + kx];
              for (std::size_t y = 0; y < b.conv_rows; ++y) {
                const double* drow = d + y * b.conv_cols;
                const double* irow = in + (y + ky) * b.in_cols + kx;
                for (std::size_t x = 0; x < b.conv_cols; ++x) {
                  acc += drow[x] * irow[x];
                }
                if (din != nullptr) {
                  double* dirow = din + (y + ky) * b.in_cols + kx;
                  for (std::size_t x = 0; x < b.conv_cols; ++x) {
                    dirow[x] += drow[x] * kv;
                  }
                }
              }
              gk[ky * 3 + kx] += acc;
            }
          }
        }
      }
      dpooled = std::move(dinput);
    }
  }
  return BceLoss(labels, probs);
}

std::vector<double> FitColumns(std::span<const double> m, std::size_t rows,
                               std::size_t cols_in, std::size_t cols,
                               double pad_value) {
  if (m.size() != rows * cols_in) {
    throw InvalidArgument("matrix storage does not match its shape");
  }
  std::vector<double> out(rows * cols, pad_value);
  if (cols_in >= cols) {
    const std::size_t start = (cols_in - cols) / 2;
    for (std::size_t r = 0; r < rows; ++r) {
      std::copy_n(m.data() + r * cols_in + start, cols, out.data() + r * cols);
    }
  } else {
    const std::size_t start = (cols - cols_in) / 2;
    for (std::size_t r = 0; r < rows; ++r) {
      std::copy_n(m.data() + r * cols_in, cols_in,
                  out.data() + r * cols + start);
    }
  }
  return out;
}

CnnModel TrainCnn(const Dataset& train, const CnnConfig& config,
                  SeededRng& rng) {
  if (train.empty()) throw DataError("CNN: empty training set");
  if (!train.FullyLabeled()) throw DataError("CNN: unlabeled training rows");
  if (train.dims() != config.input_rows * config.input_cols) {
    throw DataError("CNN: training rows do not match the input shape " +
                    std::to_string(config.input_rows) + "x" +
                    std::to_string(config.input_cols));
  }
  if (config.batch_size == 0 || config.epochs < 1 || config.dropout < 0.0 ||
      config.dropout >= 1.0) {
    throw InvalidArgument("CNN: invalid training configuration");
  }
  CnnModel model = MakeCnn(config);
  model.seed = rng.seed();
  const CnnShape shape = ComputeCnnShape(config);

  double sum = 0.0;
  double sq = 0.0;
  double count = 0.0;
  for (const auto& row : train.rows) {
    for (double v : row) {
      sum += v;
      sq += v * v;
      count += 1.0;
    }
  }
  model.input_mean = sum / count;
  const double var = sq / count - model.input_mean * model.input_mean;
  model.input_std = var > 1e-24 ? std::sqrt(var) : 1.0;

  // He-uniform for rectifier layers, Glorot-uniform for the output unit.
  auto fill = [&](std::size_t offset, std::size_t n, double limit) {
    for (std::size_t i = 0; i < n; ++i) {
      model.params[offset + i] = rng.Uniform(-limit, limit);
    }
  };
  for (const CnnShape::Block& b : shape.blocks) {
    fill(b.weight_offset, b.filters * b.in_channels * 9,
         std::sqrt(6.0 / static_cast<double>(b.in_channels * 9)));
  }
  fill(shape.dense_w, config.dense_units * shape.flat,
       std::sqrt(6.0 / static_cast<double>(shape.flat)));
  fill(shape.out_w, config.dense_units,
       std::sqrt(6.0 / static_cast<double>(config.dense_units + 1)));

  SeededRng dropout_rng = rng.Fork(0xd50u);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> velocity(shape.total, 0.0);
  std::vector<double> grad;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.Shuffle(order);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size();
         start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      std::vector<std::span<const double>> batch;
      std::vector<int> labels;
      for (std::size_t k = start; k < end; ++k) {
        batch.emplace_back(train.rows[order[k]]);
        labels.push_back(train.labels[order[k]]);
      }
      const double loss =
          CnnLossAndGradient(model, batch, labels, grad, &dropout_rng);
      loss_sum += loss * static_cast<double>(end - start);
      MomentumStep(model.params, velocity, grad, config.learning_rate,
                   config.momentum);
    }
    const double epoch_loss = loss_sum / static_cast<double>(order.size());
    if (!std::isfinite(epoch_loss)) {
      throw NumericError("CNN training diverged at epoch " +
                         std::to_string(epoch));
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < train.size(); ++i) {
      const int pred =
          Forward(model, shape, train.rows[i], nullptr).prob >= 0.5 ? 1 : 0;
      if (pred == train.labels[i]) ++correct;
    }
    model.history.push_back(
        {epoch, epoch_loss,
         static_cast<double>(correct) / static_cast<double>(train.size())});
  }
  return model;
}

}  // namespace dfusion
