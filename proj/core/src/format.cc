// Copyright 2026 The medcon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "medcon/format.h"

#include <array>
#include <charconv>
#include <string>

#include "medcon/error.h"

namespace medcon {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

namespace {

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T v{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(std::string(what) + ": cannot parse '" +
                     std::string(text) + "' as a number");
  }
  return v;
}

}  // namespace

double parse_double(std::string_view text, std::string_view what) {
  return parse_number<double>(text, what);
}

std::int64_t parse_int(std::string_view text, std::string_view what) {
  return parse_number<std::int64_t>(text, what);
}

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
  return parse_number<std::uint64_t>(text, what);
}

bool parse_bool(std::string_view text, std::string_view what) {
  if (text == "1" || text == "true") return true;
  if (text == "0" || text == "false") return false;
  throw ParseError(std::string(what) + ": expected true/false, got '" +
                   std::string(text) + "'");
}

}  // namespace medcon
