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
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "episent/lang.hpp"

namespace episent {

// Pinned cleaning configuration. The built-in defaults are byte-identical to
// the bundled resources/cleaning_rules.tsv so cleaning is reproducible with
// or without the resource file.
struct CleaningRules {
    // A whitespace-delimited token is dropped when it starts with one of
    // these prefixes (ASCII case-insensitive) or contains one of the infixes.
    std::vector<std::string> url_prefixes;
    std::vector<std::string> url_infixes;
    // A token is dropped when its first code point is one of these.
    std::u32string drop_prefixes;
    // Inclusive code-point ranges removed everywhere before token filtering.
    std::vector<std::pair<char32_t, char32_t>> emoji_ranges;
    // Code points removed by strip_punctuation.
    std::u32string punctuation;

    static CleaningRules defaults();
    // TSV rows: "url_prefix\tP", "url_infix\tI", "drop_prefix\tC",
    // "emoji_range\tLO\tHI" (hex, inclusive), "punct\tCHARS".
    // '#'-initial lines and blank lines are ignored.
    static CleaningRules load(const std::filesystem::path& path);
};

struct StopList {
    Lang lang = Lang::english;
    std::unordered_set<std::string> words;

    bool contains(const std::string& token) const { return words.count(token) != 0; }
    // One token per line, UTF-8; '#'-initial lines are comments. English
    // entries are case-folded on load. Entries containing whitespace are a
    // data error.
    static StopList load(const std::filesystem::path& path, Lang lang);
};

struct TokenizedSample {
    std::string id;
    std::vector<std::string> tokens;
    std::size_t n() const { return tokens.size(); }
};

// Removes emoji/pictograph code points, then drops whitespace-delimited
// tokens that look like URLs or start with a drop prefix ('#', '@').
// Surviving tokens are re-joined with single spaces. Idempotent.
std::string clean(const std::string& raw, const CleaningRules& rules);
std::string clean(const std::string& raw);

// Removes every code point in rules.punctuation; all other characters are
// untouched. Idempotent.
std::string strip_punctuation(const std::string& text, const CleaningRules& rules);
std::string strip_punctuation(const std::string& text);

// Whitespace-delimited segmentation. English tokens are ASCII-lowercased;
// Urdu tokens are left as-is. Never emits empty tokens.
std::vector<std::string> tokenize(const std::string& text, Lang lang);

// Returns input minus stoplist members, order preserved. Throws DataError
// when stoplist.lang differs from lang.
std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens, Lang lang,
                                          const StopList& stoplist);

}  // namespace episent
