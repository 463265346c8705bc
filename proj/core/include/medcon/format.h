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

#ifndef MEDCON_FORMAT_H_
#define MEDCON_FORMAT_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace medcon {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);
// Strict parse of a whole token; throws ParseError naming `what`.
double parse_double(std::string_view text, std::string_view what);
std::int64_t parse_int(std::string_view text, std::string_view what);
std::uint64_t parse_uint(std::string_view text, std::string_view what);
bool parse_bool(std::string_view text, std::string_view what);

}  // namespace medcon

#endif  // MEDCON_FORMAT_H_
