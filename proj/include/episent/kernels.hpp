// Copyright 2026-present the episent authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EPISENT_KERNELS_HPP_
#define EPISENT_KERNELS_HPP_

#include <cstddef>

// Dense arithmetic primitives behind the classifier training loops.
//
// Every entry point has a scalar reference implementation plus SIMD variants
// (AVX2+FMA on x86-64, NEON on aarch64). The variant is picked once at
// startup from CPU features; EPISENT_KERNELS=scalar|avx2|neon|auto overrides
// the choice. SIMD results may differ from scalar in the last bits because
// reduction order and FMA contraction differ; within one process the selected
// backend is fixed, so runs stay deterministic.
namespace episent::kernels {

enum class Backend { scalar, avx2, neon };

Backend active_backend();
const char* backend_name(Backend b);

float dot(const float* x, const float* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);

// y += a * x
void axpy(float a, const float* x, float* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);

// x *= a
void scale(float a, float* x, std::size_t n);
void scale(double a, double* x, std::size_t n);

// Reference kernels, always available regardless of the active backend.
namespace scalar {
float dot(const float* x, const float* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void axpy(float a, const float* x, float* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(float a, float* x, std::size_t n);
void scale(double a, double* x, std::size_t n);
}  // namespace scalar

}  // namespace episent::kernels

#endif  // EPISENT_KERNELS_HPP_
