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

#include "episent/features.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "episent/errors.hpp"

namespace episent {

double FeatureVector::l2_norm() const {
    double sum = 0.0;
    for (const auto& [index, weight] : pairs) sum += weight * weight;
    return std::sqrt(sum);
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& train_docs,
                            std::size_t min_df) {
    if (min_df < 1) throw UsageError("min_df must be at least 1");
    std::map<std::string, std::size_t> df;
    for (const std::vector<std::string>& doc : train_docs) {
        std::set<std::string> unique(doc.begin(), doc.end());
        for (const std::string& term : unique) ++df[term];
    }
    Vocabulary vocab;
    vocab.min_df = min_df;
    for (const auto& [term, count] : df) {
        if (count >= min_df) {
            vocab.term_to_index.emplace(term, vocab.index_to_term.size());
            vocab.index_to_term.push_back(term);
        }
    }
    if (vocab.index_to_term.empty()) {
        throw DataError("vocabulary is empty: no term reaches min_df " + std::to_string(min_df));
    }
    return vocab;
}

SparseCountVector bow_vectorize(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
    std::map<std::size_t, std::size_t> counts;
    for (const std::string& token : tokens) {
        auto it = vocab.term_to_index.find(token);
        if (it != vocab.term_to_index.end()) ++counts[it->second];
    }
    SparseCountVector out;
    out.dim = vocab.size();
    out.pairs.assign(counts.begin(), counts.end());
    return out;
}

IdfWeights tfidf_fit(const std::vector<SparseCountVector>& train_counts) {
    if (train_counts.empty()) throw DataError("tfidf_fit needs a nonempty corpus");
    std::size_t dim = train_counts.front().dim;
    for (const SparseCountVector& v : train_counts) {
        if (v.dim != dim) {
            throw DataError("tfidf_fit: inconsistent vector dimensions (" + std::to_string(dim) +
                            " vs " + std::to_string(v.dim) + ")");
        }
    }
    IdfWeights w;
    w.n_docs = train_counts.size();
    w.df.assign(dim, 0);
    for (const SparseCountVector& v : train_counts) {
        for (const auto& [index, count] : v.pairs) {
            if (count > 0) ++w.df[index];
        }
    }
    w.idf.resize(dim);
    double n = static_cast<double>(w.n_docs);
    for (std::size_t t = 0; t < dim; ++t) {
        w.idf[t] = std::log((1.0 + n) / (1.0 + static_cast<double>(w.df[t]))) + 1.0;
    }
    return w;
}

FeatureVector tfidf_transform(const SparseCountVector& counts, const IdfWeights& idf, bool l2) {
    if (counts.dim != idf.idf.size()) {
        throw DataError("tfidf_transform: vector dim " + std::to_string(counts.dim) +
                        " does not match idf dim " + std::to_string(idf.idf.size()));
    }
    FeatureVector out;
    out.dim = counts.dim;
    out.pairs.reserve(counts.pairs.size());
    for (const auto& [index, count] : counts.pairs) {
        out.pairs.emplace_back(index, static_cast<double>(count) * idf.idf[index]);
    }
    if (l2) {
        double norm = out.l2_norm();
        if (norm > 0.0) {
            for (auto& [index, weight] : out.pairs) weight /= norm;
        }
        out.l2_normalized = true;
    }
    return out;
}

nlohmann::ordered_json vocabulary_to_json(const Vocabulary& vocab) {
    nlohmann::ordered_json j;
    j["min_df"] = vocab.min_df;
    j["terms"] = vocab.index_to_term;
    return j;
}

Vocabulary vocabulary_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array()) {
        throw DataError("vocabulary JSON must be an object with a terms array");
    }
    Vocabulary vocab;
    vocab.min_df = j.value("min_df", std::size_t{1});
    for (const auto& term : j.at("terms")) {
        if (!term.is_string()) throw DataError("vocabulary terms must be strings");
        std::string t = term.get<std::string>();
        if (!vocab.term_to_index.emplace(t, vocab.index_to_term.size()).second) {
            throw DataError("vocabulary JSON contains duplicate term \"" + t + "\"");
        }
        vocab.index_to_term.push_back(std::move(t));
    }
    return vocab;
}

nlohmann::ordered_json idf_to_json(const IdfWeights& idf) {
    nlohmann::ordered_json j;
    j["n_docs"] = idf.n_docs;
    j["df"] = idf.df;
    j["idf"] = idf.idf;
    return j;
}

IdfWeights idf_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("idf") || !j.contains("df") || !j.contains("n_docs")) {
        throw DataError("idf JSON must carry n_docs, df and idf");
    }
    IdfWeights w;
    w.n_docs = j.at("n_docs").get<std::size_t>();
    w.df = j.at("df").get<std::vector<std::size_t>>();
    w.idf = j.at("idf").get<std::vector<double>>();
    if (w.df.size() != w.idf.size()) throw DataError("idf JSON: df and idf lengths differ");
    return w;
}

}  // namespace episent
