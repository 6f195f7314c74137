// Copyright 2026 The kdqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kdqc/errors.hpp"

#include <sstream>
#include <utility>

namespace kdqc {

namespace {

std::string join_failures(const std::vector<std::string>& failures) {
  std::ostringstream out;
  out << "validation failed";
  for (const auto& f : failures) out << "\n  - " << f;
  return out.str();
}

std::string located(const std::string& message, std::size_t line, std::size_t column,
                    const std::string& source_line) {
  std::ostringstream out;
  out << "line " << line << ", column " << column << ": " << message << "\n  " << source_line
      << "\n  " << std::string(column > 0 ? column - 1 : 0, ' ') << '^';
  return out.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> failures)
    : Error(join_failures(failures)), failures_(std::move(failures)) {}

ValidationError::ValidationError(const std::string& failure)
    : ValidationError(std::vector<std::string>{failure}) {}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column,
                       const std::string& source_line)
    : Error(located(message, line, column, source_line)), line_(line), column_(column) {}

}  // namespace kdqc
