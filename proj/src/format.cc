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

#include "qtrade/format.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qtrade {

std::string format_double(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("cannot format non-finite number");
  }
  char buf[32];
  int len = std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

namespace {

void dump_into(const nlohmann::json& value, std::string& out) {
  switch (value.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(key).dump();
        out += ':';
        dump_into(item, out);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ',';
        first = false;
        dump_into(item, out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double(value.get<double>());
      break;
    default:
      out += value.dump();
  }
}

bool parse_decimal(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

std::string dump_json(const nlohmann::json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

double parse_angle(std::string_view text) {
  const std::string original(text);
  double value = 0.0;
  if (parse_decimal(text, value)) return value;

  auto pi_pos = text.find("pi");
  if (pi_pos == std::string_view::npos) {
    throw std::invalid_argument("invalid angle: " + original);
  }
  std::string_view coeff_text = text.substr(0, pi_pos);
  std::string_view tail = text.substr(pi_pos + 2);

  double coeff = 1.0;
  if (!coeff_text.empty() && coeff_text.back() == '*') coeff_text.remove_suffix(1);
  if (coeff_text == "-") {
    coeff = -1.0;
  } else if (!coeff_text.empty() && coeff_text != "+") {
    if (!parse_decimal(coeff_text, coeff)) {
      throw std::invalid_argument("invalid angle: " + original);
    }
  }

  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/' || !parse_decimal(tail.substr(1), divisor) ||
        divisor == 0.0) {
      throw std::invalid_argument("invalid angle: " + original);
    }
  }
  return coeff * std::numbers::pi / divisor;
}

}  // namespace qtrade
