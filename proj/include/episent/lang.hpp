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

#ifndef EPISENT_LANG_HPP_
#define EPISENT_LANG_HPP_

#include <string>
#include <string_view>

#include "episent/errors.hpp"

namespace episent {

enum class Lang { english, urdu };

inline const char* to_string(Lang l) {
    return l == Lang::english ? "english" : "urdu";
}

inline Lang lang_from_string(std::string_view s) {
    if (s == "english") return Lang::english;
    if (s == "urdu") return Lang::urdu;
    throw DataError("unknown lang value: \"" + std::string(s) + "\" (expected english or urdu)");
}

}  // namespace episent

#endif  // EPISENT_LANG_HPP_
