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
#include <span>
#include <vector>

namespace dfusion {

bool IsPowerOfTwo(std::size_t n);

// In-place iterative radix-2 decimation-in-time FFT, X[k] = sum x[n] e^{-2 pi i kn/N}.
// Throws InvalidArgument unless the size is a power of two.
void Fft(std::span<std::complex<double>> values);

}  // namespace dfusion
