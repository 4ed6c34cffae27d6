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

#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "episent/errors.hpp"
#include "episent/preprocess.hpp"
#include "episent/rng.hpp"
#include "episent/utf8.hpp"

namespace {

using namespace episent;

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_SUITE("preprocess") {

TEST_CASE("clean removes urls, tags, and emoji") {
    CHECK(clean("dengue spike http://t.co/abc #fever \xF0\x9F\x98\xB7") == "dengue spike");
    CHECK(clean("plain text") == "plain text");
    CHECK(clean("@user said WWW.EXAMPLE.COM/x is down") == "said is down");
    CHECK(clean("see ftp://host/file and a.b://c") == "see and");
    CHECK(clean("") == "");
    CHECK(clean("   ") == "");
}

TEST_CASE("clean collapses whitespace") {
    CHECK(clean("a\t b\n\nc") == "a b c");
}

TEST_CASE("clean keeps urdu text intact") {
    std::string urdu = "\xDA\x88\xDB\x8C\xD9\x86\xDA\xAF\xDB\x8C \xD8\xA8\xD8\xAE\xD8\xA7\xD8\xB1";
    CHECK(clean(urdu) == urdu);
}

TEST_CASE("clean is idempotent on fuzz strings") {
    Rng rng(99);
    const std::string alphabet = "ab #@:/.wth\xF0\x9F\x98\xB7 ";
    for (int trial = 0; trial < 1000; ++trial) {
        std::string s;
        std::size_t len = rng.below(40);
        for (std::size_t i = 0; i < len; ++i) s += alphabet[rng.below(alphabet.size())];
        std::string once = clean(s);
        CHECK(clean(once) == once);
    }
}

TEST_CASE("strip_punctuation removes ascii and urdu marks") {
    CHECK(strip_punctuation("fever, chills!") == "fever chills");
    CHECK(strip_punctuation("\xD8\xA8\xD8\xAE\xD8\xA7\xD8\xB1 \xDB\x81\xDB\x92\xDB\x94") ==
          "\xD8\xA8\xD8\xAE\xD8\xA7\xD8\xB1 \xDB\x81\xDB\x92");
    CHECK(strip_punctuation("") == "");
    CHECK(strip_punctuation("no2digits4removed") == "no2digits4removed");
    std::string once = strip_punctuation("a.b,c;d");
    CHECK(strip_punctuation(once) == once);
}

TEST_CASE("tokenize splits and folds case per language") {
    CHECK(tokenize("Dengue Fever rising", Lang::english) ==
          std::vector<std::string>{"dengue", "fever", "rising"});
    CHECK(tokenize("  a  b ", Lang::english) == std::vector<std::string>{"a", "b"});
    std::string urdu = "\xDA\x88\xDB\x8C\xD9\x86\xDA\xAF\xDB\x8C \xD8\xA8\xD8\xAE\xD8\xA7\xD8\xB1";
    auto toks = tokenize(urdu, Lang::urdu);
    REQUIRE(toks.size() == 2);
    CHECK(toks[0] == "\xDA\x88\xDB\x8C\xD9\x86\xDA\xAF\xDB\x8C");
    CHECK(toks[1] == "\xD8\xA8\xD8\xAE\xD8\xA7\xD8\xB1");
    CHECK(tokenize("", Lang::english).empty());
}

TEST_CASE("tokenize round-trips through single-space join") {
    Rng rng(7);
    const std::string alphabet = "abc XY ";
    for (int trial = 0; trial < 200; ++trial) {
        std::string s;
        std::size_t len = rng.below(30);
        for (std::size_t i = 0; i < len; ++i) s += alphabet[rng.below(alphabet.size())];
        auto toks = tokenize(s, Lang::english);
        std::string joined;
        for (std::size_t i = 0; i < toks.size(); ++i) {
            if (i) joined += ' ';
            CHECK(!toks[i].empty());
            joined += toks[i];
        }
        CHECK(tokenize(joined, Lang::english) == toks);
    }
}

TEST_CASE("remove_stopwords filters and preserves order") {
    StopList sl;
    sl.lang = Lang::english;
    sl.words = {"the", "is"};
    auto out = remove_stopwords({"the", "fever", "is", "high"}, Lang::english, sl);
    CHECK(out == std::vector<std::string>{"fever", "high"});
    CHECK(remove_stopwords({"the", "is", "the"}, Lang::english, sl).empty());
}

TEST_CASE("remove_stopwords rejects language mismatch") {
    StopList sl;
    sl.lang = Lang::urdu;
    CHECK_THROWS_AS(remove_stopwords({"a"}, Lang::english, sl), DataError);
}

TEST_CASE("stoplist loads, folds english case, skips comments") {
    std::string path = write_temp("episent_stop_en.txt",
                                  "# comment\nThe\nis\n\nOF\n");
    StopList sl = StopList::load(path, Lang::english);
    CHECK(sl.words.size() == 3);
    CHECK(sl.contains("the"));
    CHECK(sl.contains("of"));
    CHECK(!sl.contains("The"));
}

TEST_CASE("stoplist rejects multi-token entries") {
    std::string path = write_temp("episent_stop_bad.txt", "a b\n");
    CHECK_THROWS_AS(StopList::load(path, Lang::english), DataError);
}

TEST_CASE("cleaning rules file round-trips the defaults") {
    CleaningRules defaults = CleaningRules::defaults();
    CleaningRules loaded = CleaningRules::load("resources/cleaning_rules.tsv");
    CHECK(loaded.url_prefixes == defaults.url_prefixes);
    CHECK(loaded.url_infixes == defaults.url_infixes);
    CHECK(loaded.drop_prefixes == defaults.drop_prefixes);
    CHECK(loaded.emoji_ranges == defaults.emoji_ranges);
    CHECK(loaded.punctuation == defaults.punctuation);
}

TEST_CASE("bundled urdu stop list filters the sample phrase") {
    StopList sl = StopList::load("resources/stopwords_ur.txt", Lang::urdu);
    std::string ka = "\xDA\xA9\xD8\xA7";
    REQUIRE(sl.contains(ka));
    std::vector<std::string> toks = {"\xDA\x88\xDB\x8C\xD9\x86\xDA\xAF\xDB\x8C", ka,
                                     "\xD8\xA8\xD8\xAE\xD8\xA7\xD8\xB1"};
    auto out = remove_stopwords(toks, Lang::urdu, sl);
    CHECK(out == std::vector<std::string>{"\xDA\x88\xDB\x8C\xD9\x86\xDA\xAF\xDB\x8C",
                                          "\xD8\xA8\xD8\xAE\xD8\xA7\xD8\xB1"});
}

}  // TEST_SUITE
