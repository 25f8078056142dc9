// Copyright 2026 The qtrade Authors
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

#ifndef QTRADE_ERRORS_H_
#define QTRADE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qtrade {

// Validation problems are reported as std::invalid_argument (or
// std::out_of_range for indices). File-system failures use IoError so that
// front ends can tell them apart.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qtrade

#endif  // QTRADE_ERRORS_H_
