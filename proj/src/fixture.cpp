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

#include "episent/fixture.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "episent/errors.hpp"
#include "episent/rng.hpp"

namespace episent {

namespace {

// One strong keyword per occurrence decides both the sentiment polarity and
// the emotion category; valences in resources/sentiment_en.tsv all have
// magnitude >= 2, which clears the +-0.3 compound thresholds on its own.
const std::map<Emotion, std::vector<std::string>> kKeywordsEn = {
    {Emotion::happiness, {"joy", "relief", "delight", "cheer"}},
    {Emotion::surprise, {"astonishment", "amazement", "marvel", "wonder"}},
    {Emotion::sadness, {"grief", "sorrow", "despair", "misery"}},
    {Emotion::anger, {"rage", "fury", "outrage", "resentment"}},
    {Emotion::fear, {"panic", "terror", "dread", "fright"}},
    {Emotion::disgust, {"revulsion", "filth", "stench", "nausea"}},
};

// Glosses name the same-category English keyword used in the translation.
const std::map<Emotion, std::vector<GlossedWord>> kKeywordsUr = {
    {Emotion::happiness, {{"خوشی", "joy"}, {"راحت", "relief"}}},
    {Emotion::surprise, {{"حیرت", "astonishment"}, {"تعجب", "amazement"}}},
    {Emotion::sadness, {{"غم", "grief"}, {"افسوس", "sorrow"}}},
    {Emotion::anger, {{"غصہ", "rage"}, {"طیش", "fury"}}},
    {Emotion::fear, {{"خوف", "terror"}, {"دہشت", "dread"}}},
    {Emotion::disgust, {{"نفرت", "revulsion"}, {"گھن", "nausea"}}},
};

// Neutral domain vocabulary: absent from both sentiment lexicons and all
// six synonym lists, so filler-only samples score exactly zero.
const std::vector<std::string> kFillersEn = {
    "dengue",  "mosquito", "fever",  "hospital", "clinic",  "ward",   "city",
    "town",    "water",    "rain",   "street",   "report",  "update", "bulletin",
    "survey",  "doctor",   "nurse",  "patient",  "family",  "school", "market",
    "area",    "district", "season", "today",    "morning", "evening"};

const std::vector<GlossedWord> kFillersUr = {
    {"ڈینگی", "dengue"},   {"مچھر", "mosquito"}, {"بخار", "fever"},
    {"ہسپتال", "hospital"}, {"شہر", "city"},      {"پانی", "water"},
    {"بارش", "rain"},       {"رپورٹ", "report"},  {"آج", "today"},
    {"خاندان", "family"},    {"ڈاکٹر", "doctor"},  {"محلہ", "area"},
    {"مارکیٹ", "market"},   {"سکول", "school"},   {"مریض", "patient"}};

const std::vector<Emotion> kPositiveEmotions = {Emotion::happiness, Emotion::surprise};
const std::vector<Emotion> kNegativeEmotions = {Emotion::sadness, Emotion::anger, Emotion::fear,
                                                Emotion::disgust};

Sentiment target_sentiment(std::size_t i, bool imbalanced) {
    if (imbalanced) {
        const std::size_t r = i % 20;
        if (r < 12) return Sentiment::neutral;
        if (r < 17) return Sentiment::negative;
        return Sentiment::positive;
    }
    switch (i % 3) {
        case 0:
            return Sentiment::neutral;
        case 1:
            return Sentiment::positive;
        default:
            return Sentiment::negative;
    }
}

void insert_at(std::vector<GlossedWord>& words, Rng& rng, GlossedWord w) {
    const std::size_t pos = static_cast<std::size_t>(rng.below(words.size() + 1));
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(pos), std::move(w));
}

}  // namespace

void FixtureConfig::validate() const {
    if (samples == 0) throw UsageError("fixture needs at least one sample");
    if (urdu_fraction < 0.0 || urdu_fraction > 1.0) {
        throw UsageError("urdu fraction must lie in [0, 1]");
    }
    if (distractor_rate < 0.0 || distractor_rate > 1.0) {
        throw UsageError("distractor rate must lie in [0, 1]");
    }
}

const std::map<Emotion, std::vector<std::string>>& fixture_keywords_en() { return kKeywordsEn; }
const std::map<Emotion, std::vector<GlossedWord>>& fixture_keywords_ur() { return kKeywordsUr; }
const std::vector<std::string>& fixture_fillers_en() { return kFillersEn; }
const std::vector<GlossedWord>& fixture_fillers_ur() { return kFillersUr; }

const std::vector<Emotion>& emotions_for(Sentiment polarity) {
    if (polarity == Sentiment::positive) return kPositiveEmotions;
    if (polarity == Sentiment::negative) return kNegativeEmotions;
    throw UsageError("neutral sentiment has no emotion categories");
}

Dataset generate_fixture(const FixtureConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    const std::size_t n_urdu =
        static_cast<std::size_t>(static_cast<double>(cfg.samples) * cfg.urdu_fraction + 0.5);
    const std::size_t n_english = cfg.samples - n_urdu;

    Dataset ds;
    ds.samples.reserve(cfg.samples);
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const bool english = i < n_english;
        const Sentiment target = target_sentiment(i, cfg.imbalanced);

        std::vector<GlossedWord> words;
        const std::size_t filler_count = 6 + static_cast<std::size_t>(rng.below(5));
        for (std::size_t k = 0; k < filler_count; ++k) {
            if (english) {
                const auto& w = kFillersEn[rng.below(kFillersEn.size())];
                words.push_back({w, w});
            } else {
                words.push_back(kFillersUr[rng.below(kFillersUr.size())]);
            }
        }

        if (target != Sentiment::neutral) {
            const auto& categories = emotions_for(target);
            const Emotion category = categories[rng.below(categories.size())];
            GlossedWord keyword;
            if (english) {
                const auto& pool = kKeywordsEn.at(category);
                const auto& w = pool[rng.below(pool.size())];
                keyword = {w, w};
            } else {
                const auto& pool = kKeywordsUr.at(category);
                keyword = pool[rng.below(pool.size())];
            }
            insert_at(words, rng, keyword);
            if (rng.uniform01() < cfg.distractor_rate) {
                // Doubling the main keyword keeps its category strictly
                // dominant over the injected same-polarity distractor.
                insert_at(words, rng, keyword);
                std::vector<Emotion> others;
                for (const Emotion e : categories) {
                    if (e != category) others.push_back(e);
                }
                const Emotion other = others[rng.below(others.size())];
                if (english) {
                    const auto& pool = kKeywordsEn.at(other);
                    const auto& w = pool[rng.below(pool.size())];
                    insert_at(words, rng, {w, w});
                } else {
                    const auto& pool = kKeywordsUr.at(other);
                    insert_at(words, rng, pool[rng.below(pool.size())]);
                }
            }
        }

        std::string text, gloss;
        for (std::size_t k = 0; k < words.size(); ++k) {
            if (k > 0) {
                text += ' ';
                gloss += ' ';
            }
            text += words[k].word;
            gloss += words[k].gloss;
        }

        LabeledSample ls;
        std::ostringstream id;
        id << "fx-" << std::setfill('0') << std::setw(5) << i;
        ls.sample.id = id.str();
        ls.sample.text = text;
        ls.sample.lang = english ? Lang::english : Lang::urdu;
        ls.sample.source = Source::synthetic;
        if (!english) ls.sample.translation = gloss;
        ds.samples.push_back(std::move(ls));
    }

    std::ostringstream prov;
    prov << "generate-fixture samples=" << cfg.samples << " seed=" << cfg.seed
         << " urdu_fraction=" << cfg.urdu_fraction << " distractor_rate=" << cfg.distractor_rate
         << " imbalanced=" << (cfg.imbalanced ? 1 : 0);
    ds.provenance = prov.str();
    return ds;
}

}  // namespace episent
