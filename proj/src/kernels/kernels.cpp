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

#include "episent/kernels.hpp"

#include <cstdlib>
#include <string>

namespace episent::kernels {

namespace scalar {

float dot(const float* x, const float* y, std::size_t n) {
    float s = 0.0f;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double dot(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy(float a, const float* x, float* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(float a, float* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void scale(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
float dot(const float* x, const float* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void axpy(float a, const float* x, float* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(float a, float* x, std::size_t n);
void scale(double a, double* x, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
float dot(const float* x, const float* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void axpy(float a, const float* x, float* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(float a, float* x, std::size_t n);
void scale(double a, double* x, std::size_t n);
}  // namespace neon
#endif

namespace {

struct Table {
    Backend backend;
    float (*dot_f32)(const float*, const float*, std::size_t);
    double (*dot_f64)(const double*, const double*, std::size_t);
    void (*axpy_f32)(float, const float*, float*, std::size_t);
    void (*axpy_f64)(double, const double*, double*, std::size_t);
    void (*scale_f32)(float, float*, std::size_t);
    void (*scale_f64)(double, double*, std::size_t);
};

constexpr Table kScalarTable{Backend::scalar, scalar::dot,   scalar::dot,
                             scalar::axpy,    scalar::axpy,  scalar::scale,
                             scalar::scale};

Table resolve() {
    std::string want = "auto";
    if (const char* env = std::getenv("EPISENT_KERNELS")) want = env;
    if (want == "scalar") return kScalarTable;
#if defined(__x86_64__) || defined(_M_X64)
    if (want == "auto" || want == "avx2") {
#if defined(__GNUC__) || defined(__clang__)
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
            return Table{Backend::avx2, avx2::dot,  avx2::dot,  avx2::axpy,
                         avx2::axpy,   avx2::scale, avx2::scale};
        }
#endif
    }
#endif
#if defined(__aarch64__)
    if (want == "auto" || want == "neon") {
        return Table{Backend::neon, neon::dot,  neon::dot,  neon::axpy,
                     neon::axpy,   neon::scale, neon::scale};
    }
#endif
    return kScalarTable;
}

const Table& table() {
    static const Table t = resolve();
    return t;
}

}  // namespace

Backend active_backend() { return table().backend; }

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "unknown";
}

float dot(const float* x, const float* y, std::size_t n) { return table().dot_f32(x, y, n); }
double dot(const double* x, const double* y, std::size_t n) { return table().dot_f64(x, y, n); }
void axpy(float a, const float* x, float* y, std::size_t n) { table().axpy_f32(a, x, y, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { table().axpy_f64(a, x, y, n); }
void scale(float a, float* x, std::size_t n) { table().scale_f32(a, x, n); }
void scale(double a, double* x, std::size_t n) { table().scale_f64(a, x, n); }

}  // namespace episent::kernels
