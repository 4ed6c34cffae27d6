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

#include <string>

#include "doctest.h"
#include "episent/rng.hpp"
#include "episent/utf8.hpp"

namespace {
namespace utf8 = episent::utf8;
}

TEST_SUITE("utf8") {

TEST_CASE("ascii round-trip") {
    std::string s = "hello world 123";
    CHECK(utf8::encode(utf8::decode(s)) == s);
    CHECK(utf8::decode(s).size() == s.size());
}

TEST_CASE("multi-byte decode") {
    // U+06D4 Urdu full stop: 0xDB 0x94
    std::u32string cps = utf8::decode("\xDB\x94");
    REQUIRE(cps.size() == 1);
    CHECK(cps[0] == char32_t{0x06D4});
    // U+1F637 face with medical mask: 4 bytes
    cps = utf8::decode("\xF0\x9F\x98\xB7");
    REQUIRE(cps.size() == 1);
    CHECK(cps[0] == char32_t{0x1F637});
    // U+20AC euro sign: 3 bytes
    cps = utf8::decode("\xE2\x82\xAC");
    REQUIRE(cps.size() == 1);
    CHECK(cps[0] == char32_t{0x20AC});
}

TEST_CASE("malformed bytes become replacement characters") {
    // Lone continuation byte
    std::u32string cps = utf8::decode("a\x80z");
    REQUIRE(cps.size() == 3);
    CHECK(cps[1] == char32_t{0xFFFD});
    // Truncated sequence at end of input
    cps = utf8::decode("\xF0\x9F");
    CHECK(cps.size() == 2);
    CHECK(cps[0] == char32_t{0xFFFD});
    // Overlong-style lead then a valid letter: lead consumed alone
    cps = utf8::decode("\xC3h");
    REQUIRE(cps.size() == 2);
    CHECK(cps[0] == char32_t{0xFFFD});
    CHECK(cps[1] == char32_t{'h'});
    // CESU-style surrogate code point is rejected
    cps = utf8::decode("\xED\xA0\x80");
    CHECK(!cps.empty());
    CHECK(cps[0] == char32_t{0xFFFD});
}

TEST_CASE("encode round-trips random valid code points") {
    episent::Rng rng(5);
    std::u32string s;
    for (int i = 0; i < 500; ++i) {
        char32_t cp;
        do {
            cp = static_cast<char32_t>(rng.below(0x10FFFF + 1));
        } while (cp >= 0xD800 && cp <= 0xDFFF);
        s.push_back(cp == 0 ? U'a' : cp);
    }
    CHECK(utf8::decode(utf8::encode(s)) == s);
}

}  // TEST_SUITE
