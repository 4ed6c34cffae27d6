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
#include <string>
#include <vector>

#include "episent/corpus.hpp"
#include "episent/neural.hpp"

namespace episent {

enum class Task { sentiment, emotion };
enum class LanguageChoice { english, urdu, both };
enum class ModelKind { mnb, svm, cnn1d, lstm, bilstm, bilstm_attention };
enum class Strategy { multiclass, ovr };

const char* to_string(Task t);
const char* to_string(LanguageChoice l);
const char* to_string(ModelKind m);
const char* to_string(Strategy s);
// All throw UsageError on unknown names.
Task task_from_string(const std::string& s);
LanguageChoice language_choice_from_string(const std::string& s);
ModelKind model_kind_from_string(const std::string& s);
Strategy strategy_from_string(const std::string& s);

// Resolved configuration of a train run. Assembled by the front end from
// flags and an optional key=value config file (flags win), then validated
// as a whole before any work starts.
struct RunConfig {
    Task task = Task::sentiment;
    LanguageChoice language = LanguageChoice::both;
    ModelKind model = ModelKind::mnb;
    Strategy strategy = Strategy::multiclass;

    std::string corpus;
    std::string resources = "resources";
    // Optional pretrained embedding text file; empty means seeded random rows.
    std::string vectors;
    std::string out;

    SplitSpec split;

    // auto resolves to bow for mnb and tfidf_l2 for svm; neural models
    // always use the embedding pipeline.
    std::string feature_mode = "auto";
    std::size_t min_df = 1;

    double alpha = 1.0;

    // lambda = 0 selects cross-validated grid search.
    double lambda = 0.0;
    std::vector<double> lambda_grid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
    std::size_t svm_epochs = 50;
    std::size_t cv_folds = 3;
    std::string cv_metric = "accuracy";

    // arch is overwritten from model and seed from the split seed.
    NeuralConfig neural;

    // Throws UsageError on bad combinations or ranges, ResourceError when a
    // referenced input path does not exist.
    void validate() const;
};

// Entry point shared by the episent binary and the end-to-end tests.
// Returns a process exit code: 0 success, 1 usage, 2 data, 3 resource,
// 4 internal.
int run_cli(const std::vector<std::string>& args);

}  // namespace episent
