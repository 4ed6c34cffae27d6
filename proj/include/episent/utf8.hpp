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

#ifndef EPISENT_UTF8_HPP_
#define EPISENT_UTF8_HPP_

#include <string>
#include <string_view>

namespace episent::utf8 {

// Malformed byte sequences decode to U+FFFD, one replacement per bad byte.
std::u32string decode(std::string_view s);

void append(std::string& out, char32_t cp);

std::string encode(const std::u32string& s);

}  // namespace episent::utf8

#endif  // EPISENT_UTF8_HPP_
