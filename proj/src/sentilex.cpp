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

#include "episent/sentilex.hpp"

#include <cmath>
#include <fstream>

#include "episent/errors.hpp"
#include "episent/preprocess.hpp"

namespace episent {

void SentimentConfig::validate() const {
    if (!(neg_threshold < pos_threshold)) {
        throw UsageError("sentiment thresholds must satisfy neg_threshold < pos_threshold");
    }
    if (!(norm_alpha > 0.0)) {
        throw UsageError("sentiment norm_alpha must be positive");
    }
}

void Histogram::add(double value) {
    double idx = std::floor((value - lo) / bin_width);
    std::size_t bin;
    if (idx < 0.0) bin = 0;
    else if (idx >= static_cast<double>(counts.size())) bin = counts.size() - 1;
    else bin = static_cast<std::size_t>(idx);
    ++counts[bin];
}

std::size_t Histogram::total() const {
    std::size_t t = 0;
    for (std::size_t c : counts) t += c;
    return t;
}

void Histogram::write_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw ResourceError("cannot write histogram file: " + path.string());
    out << "bin_low,count\n";
    for (std::size_t i = 0; i < counts.size(); ++i) {
        out << (lo + bin_width * static_cast<double>(i)) << "," << counts[i] << "\n";
    }
    if (!out) throw ResourceError("write failed for histogram file: " + path.string());
}

SentimentLexicon load_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open lexicon file: " + path.string());
    SentimentLexicon lex;
    lex.name = path.filename().string();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0) {
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": expected token<TAB>valence");
        }
        std::string token = line.substr(0, tab);
        std::string value_str = line.substr(tab + 1);
        double valence;
        std::size_t used = 0;
        try {
            valence = std::stod(value_str, &used);
        } catch (const std::exception&) {
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": valence is not numeric: \"" + value_str + "\"");
        }
        if (used != value_str.size() || !std::isfinite(valence)) {
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": valence is not a finite number: \"" + value_str + "\"");
        }
        auto [it, inserted] = lex.entries.insert_or_assign(std::move(token), valence);
        (void)it;
        if (!inserted) ++lex.duplicate_overrides;
    }
    return lex;
}

SentimentScore compound_score(const std::vector<std::string>& tokens,
                              const SentimentLexicon& lex, const SentimentConfig& cfg) {
    cfg.validate();
    SentimentScore score;
    for (const std::string& t : tokens) {
        auto it = lex.entries.find(t);
        if (it == lex.entries.end()) continue;
        score.raw_sum += it->second;
        ++score.matched_tokens;
    }
    double s = score.raw_sum;
    score.compound = s == 0.0 ? 0.0 : s / std::sqrt(s * s + cfg.norm_alpha);
    return score;
}

Sentiment polarity_label(const SentimentScore& score, const SentimentConfig& cfg) {
    cfg.validate();
    if (score.compound >= cfg.pos_threshold) return Sentiment::positive;
    if (score.compound <= cfg.neg_threshold) return Sentiment::negative;
    return Sentiment::neutral;
}

SentimentLabelResult label_dataset_sentiment(const Dataset& ds, const SentimentLexicon* lex_en,
                                             const SentimentLexicon* lex_ur,
                                             const SentimentConfig& cfg) {
    cfg.validate();
    SentimentLabelResult result;
    result.dataset = ds;
    for (LabeledSample& rec : result.dataset.samples) {
        const SentimentLexicon* lex = nullptr;
        const std::string* text = nullptr;
        Lang text_lang = rec.sample.lang;
        if (rec.sample.lang == Lang::english) {
            if (!lex_en) {
                throw DataError("no English lexicon supplied but sample \"" + rec.sample.id +
                                "\" is English");
            }
            lex = lex_en;
            text = &rec.sample.text;
        } else if (lex_ur) {
            lex = lex_ur;
            text = &rec.sample.text;
        } else if (lex_en) {
            if (!rec.sample.translation) {
                throw DataError("Urdu sample \"" + rec.sample.id +
                                "\" has no translation and no Urdu lexicon was supplied");
            }
            lex = lex_en;
            text = &*rec.sample.translation;
            text_lang = Lang::english;
        } else {
            throw DataError("no lexicon supplied for Urdu sample \"" + rec.sample.id + "\"");
        }
        std::vector<std::string> tokens = tokenize(strip_punctuation(clean(*text)), text_lang);
        SentimentScore score = compound_score(tokens, *lex, cfg);
        rec.sentiment = polarity_label(score, cfg);
        rec.emotion.reset();
        rec.emotion_status.reset();
        result.histogram.add(score.compound);
        ++result.counts[*rec.sentiment];
    }
    return result;
}

}  // namespace episent
