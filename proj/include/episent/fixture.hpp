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
#include <map>
#include <string>
#include <vector>

#include "episent/corpus.hpp"
#include "episent/labels.hpp"

namespace episent {

// Seeded synthetic bilingual corpus generator. Every sample is built from a
// neutral domain filler pool plus, for polar samples, exactly one strong
// emotion keyword (duplicated when a distractor is injected), so the
// downstream lexicon labeler assigns each sample its intended class.
struct FixtureConfig {
    std::size_t samples = 500;
    std::uint64_t seed = 0;
    double urdu_fraction = 0.5;
    // Probability that a polar sample also carries one same-polarity keyword
    // from another emotion category; the main keyword is then doubled so the
    // dominant category stays unique. Raises feature noise, never flips labels.
    double distractor_rate = 0.0;
    // Skews sentiment to 60% neutral / 25% negative / 15% positive instead
    // of the balanced thirds rotation.
    bool imbalanced = false;

    void validate() const;
};

// An Urdu token paired with the English filler or keyword used in the
// sample's translation field.
struct GlossedWord {
    std::string word;
    std::string gloss;
};

// The pools below are mirrored by the bundled resource files; the fixture
// test suite asserts the two stay consistent.
const std::map<Emotion, std::vector<std::string>>& fixture_keywords_en();
const std::map<Emotion, std::vector<GlossedWord>>& fixture_keywords_ur();
const std::vector<std::string>& fixture_fillers_en();
const std::vector<GlossedWord>& fixture_fillers_ur();

// Positive sentiment maps to {happiness, surprise}; negative maps to
// {sadness, anger, fear, disgust}.
const std::vector<Emotion>& emotions_for(Sentiment polarity);

// Unlabeled samples: ids fx-00000..., English first, then Urdu carrying a
// translation. Deterministic for a fixed config.
Dataset generate_fixture(const FixtureConfig& cfg);

}  // namespace episent
