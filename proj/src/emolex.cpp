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

#include "episent/emolex.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"

#include "episent/errors.hpp"
#include "episent/preprocess.hpp"

namespace episent {

namespace {

constexpr Emotion kAllEmotions[] = {Emotion::happiness, Emotion::sadness, Emotion::surprise,
                                    Emotion::anger,     Emotion::fear,    Emotion::disgust};

std::vector<std::pair<std::string, std::string>> read_tsv_pairs(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open tag resource file: " + path.string());
    std::vector<std::pair<std::string, std::string>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": expected key<TAB>value");
        }
        rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    return rows;
}

}  // namespace

const char* to_string(PosTag t) {
    switch (t) {
        case PosTag::noun: return "noun";
        case PosTag::adjective: return "adjective";
        case PosTag::adverb: return "adverb";
        case PosTag::verb: return "verb";
        default: return "other";
    }
}

PosTag pos_tag_from_string(std::string_view s) {
    if (s == "noun") return PosTag::noun;
    if (s == "adjective") return PosTag::adjective;
    if (s == "adverb") return PosTag::adverb;
    if (s == "verb") return PosTag::verb;
    if (s == "other") return PosTag::other;
    throw DataError("unknown POS tag: \"" + std::string(s) + "\"");
}

TagLexicon TagLexicon::load(const std::filesystem::path& entries_path,
                            const std::filesystem::path& rules_path) {
    TagLexicon lex;
    for (auto& [token, tag] : read_tsv_pairs(entries_path)) {
        lex.entries[token] = pos_tag_from_string(tag);
    }
    for (auto& [suffix, tag] : read_tsv_pairs(rules_path)) {
        lex.suffix_rules.emplace_back(suffix, pos_tag_from_string(tag));
    }
    return lex;
}

SynonymTable SynonymTable::load_dir(const std::filesystem::path& dir) {
    SynonymTable table;
    for (Emotion e : kAllEmotions) {
        std::filesystem::path path = dir / (std::string(to_string(e)) + ".txt");
        std::ifstream in(path);
        if (!in) throw ResourceError("cannot open synonym list: " + path.string());
        std::unordered_set<std::string>& set = table.lists[e];
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            set.insert(line);
        }
    }
    table.recount_overlaps();
    return table;
}

void SynonymTable::recount_overlaps() {
    std::unordered_map<std::string, std::size_t> seen;
    for (const auto& [emotion, set] : lists) {
        for (const std::string& word : set) ++seen[word];
    }
    overlap_warnings = 0;
    for (const auto& [word, n] : seen) {
        if (n > 1) ++overlap_warnings;
    }
}

std::vector<std::pair<std::string, PosTag>> pos_tag(const std::vector<std::string>& tokens,
                                                    const TagLexicon& lex) {
    std::vector<std::pair<std::string, PosTag>> out;
    out.reserve(tokens.size());
    for (const std::string& token : tokens) {
        PosTag tag = PosTag::other;
        auto it = lex.entries.find(token);
        if (it != lex.entries.end()) {
            tag = it->second;
        } else {
            for (const auto& [suffix, rule_tag] : lex.suffix_rules) {
                if (token.size() > suffix.size() &&
                    token.compare(token.size() - suffix.size(), suffix.size(), suffix) == 0) {
                    tag = rule_tag;
                    break;
                }
            }
        }
        out.emplace_back(token, tag);
    }
    return out;
}

EmotionTally tally_emotions(const std::vector<std::pair<std::string, PosTag>>& tagged,
                            const SynonymTable& syn, const Lemmatizer& lem) {
    EmotionTally tally;
    for (Emotion e : kAllEmotions) tally.counts[e] = 0;
    for (const auto& [token, tag] : tagged) {
        if (tag != PosTag::noun && tag != PosTag::adjective && tag != PosTag::adverb) continue;
        ++tally.considered_words;
        auto [lemma, stem] = lemma_stem(token, lem);
        for (const auto& [emotion, set] : syn.lists) {
            if (set.count(lemma) || set.count(stem)) ++tally.counts.at(emotion);
        }
    }
    return tally;
}

std::optional<Emotion> dominant_emotion(const EmotionTally& tally) {
    std::size_t best = 0;
    std::optional<Emotion> winner;
    bool tied = false;
    for (const auto& [emotion, count] : tally.counts) {
        if (count > best) {
            best = count;
            winner = emotion;
            tied = false;
        } else if (count == best && best > 0) {
            tied = true;
        }
    }
    if (best == 0 || tied) return std::nullopt;
    return winner;
}

std::map<std::string, Emotion> load_emotion_overrides(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open override file: " + path.string());
    std::map<std::string, Emotion> overrides;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": JSON parse error: " + e.what());
        }
        if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
            !j.contains("emotion") || !j["emotion"].is_string()) {
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": expected {\"id\": ..., \"emotion\": ...}");
        }
        overrides[j["id"].get<std::string>()] =
            emotion_from_string(j["emotion"].get<std::string>());
    }
    return overrides;
}

EmotionLabelResult label_dataset_emotion(const Dataset& ds, const EmotionResources* res_en,
                                         const EmotionResources* res_ur,
                                         const std::map<std::string, Emotion>& overrides) {
    EmotionLabelResult result;
    result.dataset = ds;
    std::unordered_map<std::string, LabeledSample*> by_id;
    for (LabeledSample& rec : result.dataset.samples) {
        by_id[rec.sample.id] = &rec;
        if (!rec.sentiment) {
            throw DataError("emotion labeling requires sentiment labels; sample \"" +
                            rec.sample.id + "\" has none");
        }
        if (*rec.sentiment == Sentiment::neutral) continue;

        const EmotionResources* res = nullptr;
        const std::string* text = nullptr;
        Lang text_lang = rec.sample.lang;
        if (rec.sample.lang == Lang::english) {
            if (!res_en) {
                throw DataError("no English emotion resources supplied but sample \"" +
                                rec.sample.id + "\" is English");
            }
            res = res_en;
            text = &rec.sample.text;
        } else if (res_ur) {
            res = res_ur;
            text = &rec.sample.text;
        } else if (res_en) {
            if (!rec.sample.translation) {
                throw DataError("Urdu sample \"" + rec.sample.id +
                                "\" has no translation and no Urdu emotion resources were "
                                "supplied");
            }
            res = res_en;
            text = &*rec.sample.translation;
            text_lang = Lang::english;
        } else {
            throw DataError("no emotion resources supplied for Urdu sample \"" + rec.sample.id +
                            "\"");
        }

        std::vector<std::string> tokens = tokenize(strip_punctuation(clean(*text)), text_lang);
        EmotionTally tally = tally_emotions(pos_tag(tokens, res->tags), res->synonyms,
                                            res->lemmatizer);
        std::optional<Emotion> dominant = dominant_emotion(tally);
        if (dominant) {
            rec.emotion = dominant;
            rec.emotion_status = EmotionStatus::automatic;
        } else {
            rec.emotion.reset();
            rec.emotion_status = EmotionStatus::unresolved;
        }
    }

    std::vector<std::string> offenders;
    for (const auto& [id, emotion] : overrides) {
        auto it = by_id.find(id);
        if (it == by_id.end()) {
            offenders.push_back(id + " (unknown id)");
            continue;
        }
        LabeledSample& rec = *it->second;
        if (*rec.sentiment == Sentiment::neutral) {
            offenders.push_back(id + " (neutral sample)");
            continue;
        }
        rec.emotion = emotion;
        rec.emotion_status = EmotionStatus::manual;
    }
    if (!offenders.empty()) {
        std::string msg = "invalid emotion overrides:";
        for (const std::string& o : offenders) msg += " " + o + ";";
        throw DataError(msg);
    }

    for (const LabeledSample& rec : result.dataset.samples) {
        if (rec.emotion) {
            ++result.counts[*rec.emotion];
        } else if (rec.emotion_status &&
                   *rec.emotion_status == EmotionStatus::unresolved) {
            ++result.unresolved;
        }
    }
    return result;
}

}  // namespace episent
