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

#ifndef QTRADE_FORMAT_H_
#define QTRADE_FORMAT_H_

#include <string>
#include <string_view>

#include "json.hpp"

namespace qtrade {

// 17 significant digits ("%.17g"), enough for every double to round-trip.
std::string format_double(double value);

// Compact JSON serialization that prints floating-point numbers with
// format_double instead of the library's shortest representation.
std::string dump_json(const nlohmann::json& value);

// Decimal or pi-fraction angle: "1.25", "pi", "-pi/4", "3pi/2", "3*pi/4",
// "0.5pi". Throws std::invalid_argument on anything else.
double parse_angle(std::string_view text);

}  // namespace qtrade

#endif  // QTRADE_FORMAT_H_
