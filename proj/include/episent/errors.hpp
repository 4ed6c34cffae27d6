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

#ifndef EPISENT_ERRORS_HPP_
#define EPISENT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace episent {

// Exit codes used by the CLI. Library errors carry one of these so the
// front end can map an exception to a process exit status.
enum class ErrorKind {
    usage = 1,     // bad flags, invalid combinations of options
    data = 2,      // malformed corpus, parse failures, contract violations in inputs
    resource = 3,  // missing or malformed lexicons, stop lists, vector files
    internal = 4,  // broken invariant inside the library
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(ErrorKind::usage, msg) {}
};

class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(ErrorKind::data, msg) {}
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& msg) : Error(ErrorKind::resource, msg) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& msg) : Error(ErrorKind::internal, msg) {}
};

}  // namespace episent

#endif  // EPISENT_ERRORS_HPP_
