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
#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "episent/corpus.hpp"

namespace episent {

struct SentimentLexicon {
    std::unordered_map<std::string, double> entries;
    std::string name;
    // Number of duplicate tokens whose earlier valence was overridden at load.
    std::size_t duplicate_overrides = 0;
};

struct SentimentConfig {
    double pos_threshold = 0.3;
    double neg_threshold = -0.3;
    double norm_alpha = 15.0;

    // Throws UsageError unless neg_threshold < pos_threshold and norm_alpha > 0.
    void validate() const;
};

struct SentimentScore {
    double compound = 0.0;
    double raw_sum = 0.0;
    std::size_t matched_tokens = 0;
};

// Fixed-width histogram over [-1, 1] for compound scores.
struct Histogram {
    double lo = -1.0;
    double bin_width = 0.05;
    std::vector<std::size_t> counts = std::vector<std::size_t>(40, 0);

    void add(double value);
    std::size_t total() const;
    // CSV rows "bin_low,count"; plottable directly.
    void write_csv(const std::filesystem::path& path) const;
};

// TSV: token<TAB>valence, UTF-8, '#'-initial comment lines. Later duplicates
// override earlier entries; the override count is recorded on the lexicon.
SentimentLexicon load_lexicon(const std::filesystem::path& path);

// raw_sum = sum of valences over matched tokens; compound = s / sqrt(s^2 + alpha).
SentimentScore compound_score(const std::vector<std::string>& tokens,
                              const SentimentLexicon& lex, const SentimentConfig& cfg);

// positive iff compound >= pos_threshold, negative iff <= neg_threshold,
// else neutral. Thresholds are inclusive toward the polar classes.
Sentiment polarity_label(const SentimentScore& score, const SentimentConfig& cfg);

struct SentimentLabelResult {
    Dataset dataset;
    Histogram histogram;
    std::map<Sentiment, std::size_t> counts;
};

// Labels every sample: clean, strip punctuation, tokenize, score, threshold.
// English samples need lex_en. Urdu samples use lex_ur on the original text
// when provided, otherwise lex_en on the translation field; an Urdu sample
// with neither is an error. Pre-existing emotion annotations are cleared
// because the fresh sentiment may contradict them.
SentimentLabelResult label_dataset_sentiment(const Dataset& ds, const SentimentLexicon* lex_en,
                                             const SentimentLexicon* lex_ur,
                                             const SentimentConfig& cfg);

}  // namespace episent
