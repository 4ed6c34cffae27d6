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

#include "episent/stemmer.hpp"

#include <algorithm>
#include <fstream>

#include "episent/errors.hpp"

namespace episent {

namespace {

std::string ascii_lower(const std::string& s) {
    std::string out = s;
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

bool all_alpha(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

// y counts as a vowel exactly when the preceding letter is a consonant.
bool is_vowel_at(const std::string& w, std::size_t i) {
    char c = w[i];
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return true;
    if (c == 'y') return i > 0 && !is_vowel_at(w, i - 1);
    return false;
}

// The number of vowel-consonant transitions: m in [C](VC)^m[V].
int measure(const std::string& w) {
    int m = 0;
    bool prev_vowel = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        bool v = is_vowel_at(w, i);
        if (prev_vowel && !v) ++m;
        prev_vowel = v;
    }
    return m;
}

bool contains_vowel(const std::string& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (is_vowel_at(w, i)) return true;
    }
    return false;
}

bool ends_double_consonant(const std::string& w) {
    std::size_t n = w.size();
    return n >= 2 && w[n - 1] == w[n - 2] && !is_vowel_at(w, n - 1);
}

// *o: stem ends consonant-vowel-consonant where the final consonant is not
// w, x, or y.
bool ends_cvc(const std::string& w) {
    std::size_t n = w.size();
    if (n < 3) return false;
    if (is_vowel_at(w, n - 3) || !is_vowel_at(w, n - 2) || is_vowel_at(w, n - 1)) return false;
    char last = w[n - 1];
    return last != 'w' && last != 'x' && last != 'y';
}

bool ends_with(const std::string& w, const char* suffix) {
    std::size_t sn = std::char_traits<char>::length(suffix);
    return w.size() >= sn && w.compare(w.size() - sn, sn, suffix) == 0;
}

std::string drop(const std::string& w, std::size_t n) { return w.substr(0, w.size() - n); }

void step1a(std::string& w) {
    if (ends_with(w, "sses")) w = drop(w, 2);
    else if (ends_with(w, "ies")) w = drop(w, 2);
    else if (ends_with(w, "ss")) {}
    else if (ends_with(w, "s")) w = drop(w, 1);
}

void step1b(std::string& w) {
    bool strip_happened = false;
    if (ends_with(w, "eed")) {
        if (measure(drop(w, 3)) > 0) w = drop(w, 1);
    } else if (ends_with(w, "ed")) {
        if (contains_vowel(drop(w, 2))) {
            w = drop(w, 2);
            strip_happened = true;
        }
    } else if (ends_with(w, "ing")) {
        if (contains_vowel(drop(w, 3))) {
            w = drop(w, 3);
            strip_happened = true;
        }
    }
    if (!strip_happened) return;
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w.push_back('e');
    } else if (ends_double_consonant(w)) {
        char last = w.back();
        if (last != 'l' && last != 's' && last != 'z') w.pop_back();
    } else if (measure(w) == 1 && ends_cvc(w)) {
        w.push_back('e');
    }
}

void step1c(std::string& w) {
    if (ends_with(w, "y") && contains_vowel(drop(w, 1))) w.back() = 'i';
}

struct Rule {
    const char* suffix;
    const char* replacement;
};

// In each step only the longest matching suffix is considered; if the m
// condition on its stem fails no other rule fires. Tables are ordered by
// suffix length, descending.
bool apply_rules(std::string& w, const Rule* rules, std::size_t count, int min_m) {
    for (std::size_t i = 0; i < count; ++i) {
        if (!ends_with(w, rules[i].suffix)) continue;
        std::size_t sn = std::char_traits<char>::length(rules[i].suffix);
        std::string stem = drop(w, sn);
        if (measure(stem) > min_m) w = stem + rules[i].replacement;
        return true;
    }
    return false;
}

void step2(std::string& w) {
    static const Rule rules[] = {
        {"ational", "ate"}, {"ization", "ize"}, {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"biliti", "ble"},  {"tional", "tion"}, {"entli", "ent"},
        {"ousli", "ous"},   {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
        {"iviti", "ive"},   {"enci", "ence"},   {"anci", "ance"},   {"izer", "ize"},
        {"abli", "able"},   {"alli", "al"},     {"ator", "ate"},    {"eli", "e"},
    };
    apply_rules(w, rules, std::size(rules), 0);
}

void step3(std::string& w) {
    static const Rule rules[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ness", ""},  {"ful", ""},
    };
    apply_rules(w, rules, std::size(rules), 0);
}

void step4(std::string& w) {
    // "ion" needs the extra stem-ends-in-s-or-t condition, handled inline.
    if (ends_with(w, "ement")) {
        std::string stem = drop(w, 5);
        if (measure(stem) > 1) w = stem;
        return;
    }
    static const Rule rules4[] = {
        {"ance", ""}, {"ence", ""}, {"able", ""}, {"ible", ""}, {"ment", ""},
    };
    if (apply_rules(w, rules4, std::size(rules4), 1)) return;
    if (ends_with(w, "ion")) {
        std::string stem = drop(w, 3);
        if (measure(stem) > 1 && !stem.empty() && (stem.back() == 's' || stem.back() == 't')) {
            w = stem;
        }
        return;
    }
    static const Rule rules3[] = {
        {"ant", ""}, {"ent", ""}, {"ism", ""}, {"ate", ""},
        {"iti", ""}, {"ous", ""}, {"ive", ""}, {"ize", ""},
    };
    if (apply_rules(w, rules3, std::size(rules3), 1)) return;
    static const Rule rules2[] = {{"al", ""}, {"er", ""}, {"ic", ""}, {"ou", ""}};
    apply_rules(w, rules2, std::size(rules2), 1);
}

void step5a(std::string& w) {
    if (!ends_with(w, "e")) return;
    std::string stem = drop(w, 1);
    int m = measure(stem);
    if (m > 1 || (m == 1 && !ends_cvc(stem))) w = stem;
}

void step5b(std::string& w) {
    if (measure(w) > 1 && ends_double_consonant(w) && w.back() == 'l') w.pop_back();
}

}  // namespace

std::string porter_stem(const std::string& word) {
    std::string w = ascii_lower(word);
    if (w.size() <= 2 || !all_alpha(w)) return w;
    step1a(w);
    step1b(w);
    step1c(w);
    step2(w);
    step3(w);
    step4(w);
    step5a(w);
    step5b(w);
    return w;
}

Lemmatizer Lemmatizer::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open lemma exception file: " + path.string());
    Lemmatizer lem;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": expected word<TAB>lemma");
        }
        lem.add_exception(line.substr(0, tab), line.substr(tab + 1));
    }
    return lem;
}

void Lemmatizer::add_exception(std::string word, std::string lemma) {
    exceptions_[ascii_lower(word)] = ascii_lower(lemma);
}

std::string Lemmatizer::lemma(const std::string& word) const {
    std::string w = ascii_lower(word);
    auto it = exceptions_.find(w);
    if (it != exceptions_.end()) return it->second;
    if (!all_alpha(w)) return w;

    auto undouble = [](std::string& s) {
        if (ends_double_consonant(s)) {
            char last = s.back();
            if (last != 'l' && last != 's' && last != 'z') s.pop_back();
        }
    };

    // Plural forms. At most one rule fires and ends the cascade.
    if (ends_with(w, "sses")) return drop(w, 2);
    if (ends_with(w, "ies")) return w.size() >= 5 ? drop(w, 3) + "y" : drop(w, 3) + "ie";
    for (const char* suf : {"ches", "shes", "xes", "zes", "oes"}) {
        if (ends_with(w, suf) && w.size() > std::char_traits<char>::length(suf)) {
            return drop(w, 2);
        }
    }
    if (ends_with(w, "ss") || ends_with(w, "us")) return w;
    if (ends_with(w, "s") && w.size() >= 4) return drop(w, 1);

    // Past and progressive forms.
    if (ends_with(w, "ied") && w.size() >= 5) return drop(w, 3) + "y";
    if (ends_with(w, "eed")) return w.size() > 4 ? drop(w, 1) : w;
    if (ends_with(w, "ed") && w.size() >= 4) {
        std::string s = drop(w, 2);
        undouble(s);
        return s;
    }
    if (ends_with(w, "ing") && w.size() >= 5) {
        std::string s = drop(w, 3);
        if (!contains_vowel(s)) return w;
        undouble(s);
        return s;
    }
    return w;
}

std::pair<std::string, std::string> lemma_stem(const std::string& word, const Lemmatizer& lem) {
    return {lem.lemma(word), porter_stem(word)};
}

}  // namespace episent
