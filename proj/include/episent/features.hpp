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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace episent {

struct Vocabulary {
    // Indices are assigned in lexicographic term order, densely from 0.
    std::map<std::string, std::size_t> term_to_index;
    std::vector<std::string> index_to_term;
    std::size_t min_df = 1;

    std::size_t size() const { return index_to_term.size(); }
};

struct SparseCountVector {
    // Strictly increasing indices, positive counts.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t dim = 0;
};

struct IdfWeights {
    // idf[t] = ln((1 + n_docs) / (1 + df[t])) + 1
    std::vector<double> idf;
    std::vector<std::size_t> df;
    std::size_t n_docs = 0;
};

struct FeatureVector {
    std::vector<std::pair<std::size_t, double>> pairs;
    std::size_t dim = 0;
    bool l2_normalized = false;

    double l2_norm() const;
};

// Terms appearing in at least min_df train documents, indexed
// lexicographically. Throws DataError when nothing survives the filter.
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& train_docs,
                            std::size_t min_df);

// Out-of-vocabulary tokens are dropped; counts are term multiplicities.
SparseCountVector bow_vectorize(const std::vector<std::string>& tokens, const Vocabulary& vocab);

IdfWeights tfidf_fit(const std::vector<SparseCountVector>& train_counts);

// weight = count * idf[index]; l2 divides by the Euclidean norm (an all-zero
// vector stays zero). Throws DataError on dimension mismatch.
FeatureVector tfidf_transform(const SparseCountVector& counts, const IdfWeights& idf, bool l2);

nlohmann::ordered_json vocabulary_to_json(const Vocabulary& vocab);
Vocabulary vocabulary_from_json(const nlohmann::json& j);
nlohmann::ordered_json idf_to_json(const IdfWeights& idf);
IdfWeights idf_from_json(const nlohmann::json& j);

}  // namespace episent
