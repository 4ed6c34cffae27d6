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

#include <filesystem>
#include <string>
#include <unordered_map>
#include <utility>

namespace episent {

// Classic Porter suffix-stripping stemmer. Input is ASCII-lowercased first;
// words containing characters outside [a-z] after lowercasing (Urdu, digits)
// are returned unchanged, as are words of length <= 2.
std::string porter_stem(const std::string& word);

// Approximate inflection lemmatizer: an exception table consulted first,
// then a pinned strip cascade for plural/-ed/-ing forms. Not a dictionary
// lemmatizer; downstream lookups always consult the stem as well.
class Lemmatizer {
public:
    Lemmatizer() = default;
    // TSV: word<TAB>lemma, UTF-8, '#' comments.
    static Lemmatizer load(const std::filesystem::path& path);

    void add_exception(std::string word, std::string lemma);
    std::string lemma(const std::string& word) const;
    std::size_t exception_count() const { return exceptions_.size(); }

private:
    std::unordered_map<std::string, std::string> exceptions_;
};

// (lemma, stem) of a word, both lowercase.
std::pair<std::string, std::string> lemma_stem(const std::string& word, const Lemmatizer& lem);

}  // namespace episent
