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

#include <string_view>

#include "episent/errors.hpp"

namespace episent {

enum class Source { twitter, news, synthetic };
enum class Sentiment { positive, negative, neutral };
enum class Emotion { happiness, sadness, surprise, anger, fear, disgust };
// auto: assigned by the rule-based annotator; manual: human-assigned;
// unresolved: annotation was attempted but no category matched.
enum class EmotionStatus { automatic, manual, unresolved };

inline const char* to_string(Source s) {
    switch (s) {
        case Source::twitter: return "twitter";
        case Source::news: return "news";
        default: return "synthetic";
    }
}

inline const char* to_string(Sentiment s) {
    switch (s) {
        case Sentiment::positive: return "positive";
        case Sentiment::negative: return "negative";
        default: return "neutral";
    }
}

inline const char* to_string(Emotion e) {
    switch (e) {
        case Emotion::happiness: return "happiness";
        case Emotion::sadness: return "sadness";
        case Emotion::surprise: return "surprise";
        case Emotion::anger: return "anger";
        case Emotion::fear: return "fear";
        default: return "disgust";
    }
}

inline const char* to_string(EmotionStatus s) {
    switch (s) {
        case EmotionStatus::automatic: return "auto";
        case EmotionStatus::manual: return "manual";
        default: return "unresolved";
    }
}

inline Source source_from_string(std::string_view s) {
    if (s == "twitter") return Source::twitter;
    if (s == "news") return Source::news;
    if (s == "synthetic") return Source::synthetic;
    throw DataError("unknown source value: \"" + std::string(s) + "\"");
}

inline Sentiment sentiment_from_string(std::string_view s) {
    if (s == "positive") return Sentiment::positive;
    if (s == "negative") return Sentiment::negative;
    if (s == "neutral") return Sentiment::neutral;
    throw DataError("unknown sentiment value: \"" + std::string(s) + "\"");
}

inline Emotion emotion_from_string(std::string_view s) {
    if (s == "happiness") return Emotion::happiness;
    if (s == "sadness") return Emotion::sadness;
    if (s == "surprise") return Emotion::surprise;
    if (s == "anger") return Emotion::anger;
    if (s == "fear") return Emotion::fear;
    if (s == "disgust") return Emotion::disgust;
    throw DataError("unknown emotion value: \"" + std::string(s) + "\"");
}

inline EmotionStatus emotion_status_from_string(std::string_view s) {
    if (s == "auto") return EmotionStatus::automatic;
    if (s == "manual") return EmotionStatus::manual;
    if (s == "unresolved") return EmotionStatus::unresolved;
    throw DataError("unknown emotion_status value: \"" + std::string(s) + "\"");
}

}  // namespace episent
