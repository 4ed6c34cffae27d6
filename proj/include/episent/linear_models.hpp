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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "episent/features.hpp"
#include "episent/prediction.hpp"

namespace episent {

inline constexpr int kModelSchemaVersion = 1;

struct MnbModel {
    // Lexicographically ordered.
    std::vector<std::string> classes;
    std::vector<double> class_log_prior;
    // K x V; per class the exponentials sum to 1.
    std::vector<std::vector<double>> feature_log_prob;
    double alpha = 1.0;

    std::size_t vocab_size() const {
        return feature_log_prob.empty() ? 0 : feature_log_prob[0].size();
    }
};

enum class SvmStrategy { binary, ovr, crammer_singer };

std::string to_string(SvmStrategy strategy);
SvmStrategy svm_strategy_from_string(const std::string& s);

struct SvmModel {
    SvmStrategy strategy = SvmStrategy::binary;
    // binary: {"+1", "-1"}; otherwise lexicographically ordered names.
    std::vector<std::string> classes;
    // binary: one row; otherwise one row per class.
    std::vector<std::vector<double>> weights;
    std::vector<double> bias;
    double lambda = 0.0;
    // Training diagnostics; never persisted.
    std::vector<double> epoch_objective;
    // Whether any epoch-end objective rose by more than 1e-3 over its
    // predecessor (stochastic steps make small rises possible; callers may
    // warn, training itself never fails on it).
    bool objective_increased = false;

    std::size_t vocab_size() const { return weights.empty() ? 0 : weights[0].size(); }
};

struct OvrMnbModel {
    std::vector<std::string> classes;
    // problems[k] is a binary model for classes[k] against the rest,
    // with internal labels "pos" / "_rest".
    std::vector<MnbModel> problems;
    double alpha = 1.0;
};

struct TrainConfig {
    std::size_t epochs = 50;
    std::uint64_t seed = 0;
    std::vector<double> lambda_grid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
    std::size_t cv_folds = 3;

    // Throws UsageError on epochs < 1, an empty grid, or folds < 2.
    void validate() const;
};

enum class CvMetric { accuracy, weighted_f1 };

struct CvCell {
    double lambda = 0.0;
    std::size_t fold = 0;
    double metric = 0.0;
};

struct GridSearchResult {
    double best_lambda = 0.0;
    std::vector<CvCell> table;
    // Grid order preserved.
    std::vector<std::pair<double, double>> mean_by_lambda;
};

MnbModel mnb_train(const std::vector<FeatureVector>& X, const std::vector<std::string>& y,
                   double alpha);
Prediction mnb_predict(const MnbModel& model, const FeatureVector& x);

// Pegasos-style primal SGD with step 1/(lambda*t) and an unregularized bias.
// Labels are +1/-1 and both must occur.
SvmModel svm_train_binary(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                          double lambda, std::size_t epochs, std::uint64_t seed);

// w.x + b of a binary model.
double svm_margin(const SvmModel& model, const FeatureVector& x);

// Binary: sign convention puts a zero margin on "+1". Multiclass: argmax of
// per-class scores, ties to the lexicographically smallest class.
Prediction svm_predict(const SvmModel& model, const FeatureVector& x);

OvrMnbModel ovr_mnb_train(const std::vector<FeatureVector>& X, const std::vector<std::string>& y,
                          double alpha);
Prediction ovr_mnb_predict(const OvrMnbModel& model, const FeatureVector& x);

// One binary Pegasos problem per class, every problem trained from the same
// seed so renaming classes permutes the rows without changing them.
SvmModel svm_train_ovr(const std::vector<FeatureVector>& X, const std::vector<std::string>& y,
                       double lambda, std::size_t epochs, std::uint64_t seed);

// Single weight matrix, multiclass hinge, joint argmax. Tied worst-violator
// scores split the subgradient update equally.
SvmModel svm_train_multiclass(const std::vector<FeatureVector>& X,
                              const std::vector<std::string>& y, double lambda,
                              std::size_t epochs, std::uint64_t seed);

// Deterministic stratified fold assignment: per class in lexicographic
// order, indices are shuffled and dealt round-robin. Throws DataError when
// any class holds fewer samples than folds.
std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<std::string>& y,
                                                       std::size_t folds, std::uint64_t seed);

// Seeded stratified k-fold over cfg.lambda_grid; best lambda is the first
// grid entry maximizing the mean validation metric.
GridSearchResult grid_search(const std::vector<FeatureVector>& X,
                             const std::vector<std::string>& y, const TrainConfig& cfg,
                             SvmStrategy strategy, CvMetric metric);

nlohmann::ordered_json mnb_to_json(const MnbModel& model, const std::string& vocab_ref);
MnbModel mnb_from_json(const nlohmann::json& j);
nlohmann::ordered_json svm_to_json(const SvmModel& model, const std::string& vocab_ref);
SvmModel svm_from_json(const nlohmann::json& j);
nlohmann::ordered_json ovr_mnb_to_json(const OvrMnbModel& model, const std::string& vocab_ref);
OvrMnbModel ovr_mnb_from_json(const nlohmann::json& j);

}  // namespace episent
