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

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "core/dataset.hpp"
#include "core/types.hpp"
#include "learn/ann.hpp"
#include "texture/glcm.hpp"

// Reference computations the library is checked against. Each one takes a
// different route to the same quantity (direct enumeration, coordinate
// construction, plain loops) rather than reusing library code.
namespace dfusion::testing {

// X[k] = sum_n x[n] exp(-2 pi i k n / N), O(N^2).
std::vector<std::complex<double>> NaiveDft(
    std::span<const std::complex<double>> x);

// Visits every ordered pair of pixel positions and keeps those whose
// displacement equals the offset.
std::vector<double> BruteGlcm(const LevelImage& image, Offset offset,
                              bool symmetric, bool normalized);

// Cheekbone construction from coordinates: angles from atan2 of vectors,
// h from intersecting two rays. Angles in degrees.
struct KiteOracle {
  double angle_r = 0.0;
  double angle_x = 0.0;
  double angle_y = 0.0;
  double h = 0.0;
  double height = 0.0;
};
KiteOracle KiteByConstruction(Point2 left, Point2 right, Point2 mid_top,
                              Point2 chin);

// Single-channel valid 3x3 cross-correlation by sliding window.
std::vector<double> NaiveConv(const std::vector<double>& input, int rows,
                              int cols, const double kernel[9], double bias);

// Forward pass with Eigen matrices, independent of the flat-vector loops.
double AnnForwardEigen(const AnnModel& model, std::span<const double> x);

// Two Gaussian clusters in `dims` dimensions separated along a random unit
// direction; points closer than `margin` to the separating hyperplane are
// redrawn, so the classes are linearly separable.
Dataset MakeBlobs(std::size_t n, std::size_t dims, double margin,
                  std::uint64_t seed);

// Mel-like dB matrices (rows bands x cols frames). Class 0 carries its
// energy in the lower third of the bands, class 1 in the upper third; both
// have noise and a random time envelope.
Dataset MakeBandEnergySpectrograms(std::size_t n, std::size_t rows,
                                   std::size_t cols, std::uint64_t seed);

// |a - b| / max(|a|, |b|, floor).
double RelativeError(double a, double b, double floor = 1e-6);

// Central differences of `loss` at the listed parameter indices.
std::vector<double> FiniteDifferences(
    const std::function<double(const std::vector<double>&)>& loss,
    std::vector<double> params, std::span<const std::size_t> indices,
    double step = 1e-5);

}  // namespace dfusion::testing
