/*
   Copyright 2026 The hpscan Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <utility>
#include <string>

namespace hpscan {

// Bad or inconsistent caller input (maps to CLI exit code 1).
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed external payload; `field` names the offending key.
class ParseError : public InputError {
  public:
    ParseError(std::string field, const std::string& what)
        : InputError{"parse error in '" + field + "': " + what}, field_{std::move(field)} {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

class DatasetError : public InputError {
  public:
    DatasetError(std::size_t line, const std::string& what)
        : InputError{"line " + std::to_string(line) + ": " + what}, line_{line} {}

    // 1-based; 0 when the error is not tied to a line
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class LabelConflictError : public InputError {
  public:
    LabelConflictError(std::string first, std::string second)
        : InputError{"conflicting seed labels for one bytecode hash: " + first + ", " + second},
          first_{std::move(first)},
          second_{std::move(second)} {}

    [[nodiscard]] const std::string& first() const noexcept { return first_; }
    [[nodiscard]] const std::string& second() const noexcept { return second_; }

  private:
    std::string first_;
    std::string second_;
};

class FetchError : public std::runtime_error {
  public:
    FetchError(const std::string& what, bool retryable)
        : std::runtime_error{what}, retryable_{retryable} {}

    [[nodiscard]] bool retryable() const noexcept { return retryable_; }

  private:
    bool retryable_;
};

}  // namespace hpscan
