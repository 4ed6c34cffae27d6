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
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "episent/labels.hpp"
#include "episent/lang.hpp"

namespace episent {

struct Sample {
    std::string id;
    std::string text;
    Lang lang = Lang::english;
    Source source = Source::synthetic;
    std::optional<std::string> timestamp;
    // Pre-translated English text for Urdu samples.
    std::optional<std::string> translation;
};

struct LabeledSample {
    Sample sample;
    std::optional<Sentiment> sentiment;
    std::optional<Emotion> emotion;
    std::optional<EmotionStatus> emotion_status;
};

bool operator==(const Sample& a, const Sample& b);
bool operator==(const LabeledSample& a, const LabeledSample& b);

struct Dataset {
    std::vector<LabeledSample> samples;
    std::string provenance;

    std::size_t size() const { return samples.size(); }
};

struct SplitSpec {
    double train_fraction = 0.7;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    bool stratify = false;
};

enum class CorpusFormat { jsonl, csv };

CorpusFormat corpus_format_from_string(std::string_view s);
// Picks jsonl/csv from the file extension; anything else is a usage error.
CorpusFormat corpus_format_from_path(const std::filesystem::path& path);

struct LoadStats {
    // Samples whose text was empty after cleaning; they are not loaded.
    std::size_t dropped_empty = 0;
};

// Reads a corpus preserving record order. Rejects duplicate ids, missing
// required fields (id, text, lang), unknown enum values, and label
// combinations that violate the emotion/sentiment rules. Samples that clean
// to the empty string are dropped and counted in *stats.
Dataset load_corpus(const std::filesystem::path& path, CorpusFormat format,
                    LoadStats* stats = nullptr);

void save_corpus(const Dataset& ds, const std::filesystem::path& path, CorpusFormat format);

// Splits into (english, urdu), both preserving relative order.
std::pair<Dataset, Dataset> partition_by_language(const Dataset& ds);

// Seeded 70/30-style split. |train| = floor(fraction*N + 0.5) (half-up);
// both halves keep the original corpus order. With stratify, the per-class
// counts are rounded half-up independently, every sample must carry a
// sentiment label, and every class needs at least 2 samples.
std::pair<Dataset, Dataset> split(const Dataset& ds, double fraction, std::uint64_t seed,
                                  bool stratify);

std::vector<std::pair<Dataset, Dataset>> multi_split(const Dataset& ds, const SplitSpec& spec);

}  // namespace episent
