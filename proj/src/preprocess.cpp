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

#include "episent/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "episent/errors.hpp"
#include "episent/utf8.hpp"

namespace episent {

namespace {

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string ascii_lower_copy(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
    return out;
}

bool starts_with_icase(const std::string& token, const std::string& prefix) {
    if (token.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (ascii_lower(token[i]) != ascii_lower(prefix[i])) return false;
    }
    return true;
}

bool contains_icase(const std::string& token, const std::string& infix) {
    if (infix.empty()) return false;
    std::string t = ascii_lower_copy(token);
    std::string n = ascii_lower_copy(infix);
    return t.find(n) != std::string::npos;
}

std::vector<std::string> split_whitespace(const std::string& text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_ascii_space(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && !is_ascii_space(text[i])) ++i;
        if (i > start) out.push_back(text.substr(start, i - start));
    }
    return out;
}

bool in_ranges(char32_t cp, const std::vector<std::pair<char32_t, char32_t>>& ranges) {
    for (const auto& [lo, hi] : ranges) {
        if (cp >= lo && cp <= hi) return true;
    }
    return false;
}

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && is_ascii_space(s[a])) ++a;
    while (b > a && is_ascii_space(s[b - 1])) --b;
    return s.substr(a, b - a);
}

char32_t parse_hex_cp(const std::string& s, const std::filesystem::path& path) {
    if (s.empty()) throw DataError("empty code point in " + path.string());
    char32_t v = 0;
    for (char c : s) {
        v <<= 4;
        if (c >= '0' && c <= '9') v |= static_cast<char32_t>(c - '0');
        else if (c >= 'a' && c <= 'f') v |= static_cast<char32_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v |= static_cast<char32_t>(c - 'A' + 10);
        else throw DataError("bad hex code point \"" + s + "\" in " + path.string());
    }
    return v;
}

}  // namespace

CleaningRules CleaningRules::defaults() {
    CleaningRules r;
    r.url_prefixes = {"http://", "https://", "ftp://", "www."};
    r.url_infixes = {"://"};
    r.drop_prefixes = U"#@";
    r.emoji_ranges = {
        {0x1F000, 0x1FAFF},  // pictographs, emoticons, transport, extended symbols
        {0x2600, 0x27BF},    // misc symbols and dingbats
        {0x2B00, 0x2B55},    // arrows/stars/shapes commonly rendered as emoji
        {0xFE00, 0xFE0F},    // variation selectors
        {0x200D, 0x200D},    // zero-width joiner
        {0x20E3, 0x20E3},    // combining enclosing keycap
    };
    r.punctuation = utf8::decode("!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~") + U"۔،؟؛";
    return r;
}

CleaningRules CleaningRules::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open cleaning rules file: " + path.string());
    CleaningRules r;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == '\t') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        const std::string& kind = fields[0];
        auto need = [&](std::size_t n) {
            if (fields.size() != n) {
                throw DataError("line " + std::to_string(lineno) + " of " + path.string() +
                                ": expected " + std::to_string(n) + " fields");
            }
        };
        if (kind == "url_prefix") {
            need(2);
            r.url_prefixes.push_back(fields[1]);
        } else if (kind == "url_infix") {
            need(2);
            r.url_infixes.push_back(fields[1]);
        } else if (kind == "drop_prefix") {
            need(2);
            std::u32string cps = utf8::decode(fields[1]);
            if (cps.size() != 1) {
                throw DataError("line " + std::to_string(lineno) + " of " + path.string() +
                                ": drop_prefix must be a single code point");
            }
            r.drop_prefixes.push_back(cps[0]);
        } else if (kind == "emoji_range") {
            need(3);
            char32_t lo = parse_hex_cp(fields[1], path);
            char32_t hi = parse_hex_cp(fields[2], path);
            if (lo > hi) {
                throw DataError("line " + std::to_string(lineno) + " of " + path.string() +
                                ": emoji_range lo > hi");
            }
            r.emoji_ranges.emplace_back(lo, hi);
        } else if (kind == "punct") {
            need(2);
            r.punctuation += utf8::decode(fields[1]);
        } else {
            throw DataError("line " + std::to_string(lineno) + " of " + path.string() +
                            ": unknown rule kind \"" + kind + "\"");
        }
    }
    return r;
}

StopList StopList::load(const std::filesystem::path& path, Lang lang) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open stop-list file: " + path.string());
    StopList sl;
    sl.lang = lang;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::string token = trim(line);
        if (token.empty()) continue;
        if (std::any_of(token.begin(), token.end(), is_ascii_space)) {
            throw DataError("line " + std::to_string(lineno) + " of " + path.string() +
                            ": stop-list entry contains whitespace: \"" + token + "\"");
        }
        if (lang == Lang::english) token = ascii_lower_copy(token);
        sl.words.insert(std::move(token));
    }
    return sl;
}

std::string clean(const std::string& raw, const CleaningRules& rules) {
    std::u32string cps = utf8::decode(raw);
    std::u32string kept;
    kept.reserve(cps.size());
    for (char32_t cp : cps) {
        if (!in_ranges(cp, rules.emoji_ranges)) kept.push_back(cp);
    }
    std::vector<std::string> tokens = split_whitespace(utf8::encode(kept));
    std::string out;
    for (const std::string& token : tokens) {
        std::u32string tcps = utf8::decode(token);
        if (!tcps.empty() && rules.drop_prefixes.find(tcps[0]) != std::u32string::npos) continue;
        bool is_url = false;
        for (const std::string& p : rules.url_prefixes) {
            if (starts_with_icase(token, p)) {
                is_url = true;
                break;
            }
        }
        if (!is_url) {
            for (const std::string& p : rules.url_infixes) {
                if (contains_icase(token, p)) {
                    is_url = true;
                    break;
                }
            }
        }
        if (is_url) continue;
        if (!out.empty()) out.push_back(' ');
        out += token;
    }
    return out;
}

std::string clean(const std::string& raw) {
    static const CleaningRules rules = CleaningRules::defaults();
    return clean(raw, rules);
}

std::string strip_punctuation(const std::string& text, const CleaningRules& rules) {
    std::u32string cps = utf8::decode(text);
    std::u32string kept;
    kept.reserve(cps.size());
    for (char32_t cp : cps) {
        if (rules.punctuation.find(cp) == std::u32string::npos) kept.push_back(cp);
    }
    return utf8::encode(kept);
}

std::string strip_punctuation(const std::string& text) {
    static const CleaningRules rules = CleaningRules::defaults();
    return strip_punctuation(text, rules);
}

std::vector<std::string> tokenize(const std::string& text, Lang lang) {
    std::vector<std::string> tokens = split_whitespace(text);
    if (lang == Lang::english) {
        for (std::string& t : tokens) t = ascii_lower_copy(t);
    }
    return tokens;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens, Lang lang,
                                          const StopList& stoplist) {
    if (stoplist.lang != lang) {
        throw DataError("stop-list language " + std::string(to_string(stoplist.lang)) +
                        " does not match sample language " + std::string(to_string(lang)));
    }
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const std::string& t : tokens) {
        if (!stoplist.contains(t)) out.push_back(t);
    }
    return out;
}

}  // namespace episent
