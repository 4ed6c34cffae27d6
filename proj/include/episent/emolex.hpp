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
#include <unordered_set>
#include <utility>
#include <vector>

#include "episent/corpus.hpp"
#include "episent/stemmer.hpp"

namespace episent {

enum class PosTag { noun, adjective, adverb, verb, other };

const char* to_string(PosTag t);
PosTag pos_tag_from_string(std::string_view s);

struct TagLexicon {
    std::unordered_map<std::string, PosTag> entries;
    // Fallback rules tried in file order after an exact-lookup miss.
    std::vector<std::pair<std::string, PosTag>> suffix_rules;

    // entries TSV: token<TAB>tag; rules TSV: suffix<TAB>tag, order preserved.
    static TagLexicon load(const std::filesystem::path& entries_path,
                           const std::filesystem::path& rules_path);
};

struct SynonymTable {
    std::map<Emotion, std::unordered_set<std::string>> lists;
    // Number of strings appearing in more than one category's list.
    std::size_t overlap_warnings = 0;

    // Loads <dir>/happiness.txt .. <dir>/disgust.txt, one lemma/stem per
    // line, '#' comments. All six files must exist.
    static SynonymTable load_dir(const std::filesystem::path& dir);
    void recount_overlaps();
};

struct EmotionTally {
    std::map<Emotion, std::size_t> counts;
    std::size_t considered_words = 0;
};

// One tag per token: exact lexicon lookup, then the first matching suffix
// rule, then other.
std::vector<std::pair<std::string, PosTag>> pos_tag(const std::vector<std::string>& tokens,
                                                    const TagLexicon& lex);

// Counts, for every noun/adjective/adverb token, each category whose list
// contains the token's lemma or stem (once per category per occurrence).
EmotionTally tally_emotions(const std::vector<std::pair<std::string, PosTag>>& tagged,
                            const SynonymTable& syn, const Lemmatizer& lem);

// The unique strictly-maximal category; nullopt when every count is zero or
// the maximum is tied (annotation is then left unresolved).
std::optional<Emotion> dominant_emotion(const EmotionTally& tally);

struct EmotionResources {
    TagLexicon tags;
    SynonymTable synonyms;
    Lemmatizer lemmatizer;
};

// JSONL {"id": ..., "emotion": ...} per line.
std::map<std::string, Emotion> load_emotion_overrides(const std::filesystem::path& path);

struct EmotionLabelResult {
    Dataset dataset;
    std::map<Emotion, std::size_t> counts;
    std::size_t unresolved = 0;
};

// Annotates every non-neutral sample: emotion + status auto when a dominant
// category exists, otherwise status unresolved. Overrides are applied last
// with status manual and must name existing non-neutral ids. Neutral samples
// are untouched. Urdu samples use res_ur on the original text when provided,
// otherwise res_en on the translation field.
EmotionLabelResult label_dataset_emotion(const Dataset& ds, const EmotionResources* res_en,
                                         const EmotionResources* res_ur,
                                         const std::map<std::string, Emotion>& overrides);

}  // namespace episent
