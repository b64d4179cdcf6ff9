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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include <hpscan/types.hpp>

// Raw dataset files are JSON Lines: a header object
//   {"format":"hpscan-raw","version":1}
// followed by one ContractBundle per line. Every integer is a decimal string so
// 256-bit wei values survive the trip.
namespace hpscan::dataset {

inline constexpr std::string_view kFormat{"hpscan-raw"};
inline constexpr int kVersion{1};

[[nodiscard]] nlohmann::json to_json(const ContractBundle& bundle);
// Throws ParseError naming the offending field.
[[nodiscard]] ContractBundle from_json(const nlohmann::json& record);

void write(std::ostream& out, std::span<const ContractBundle> bundles);
[[nodiscard]] std::vector<ContractBundle> read(std::istream& in);

// Creates the file (with header) or, when `append` is set and the file exists,
// checks its header and appends records.
void store(const std::filesystem::path& path, std::span<const ContractBundle> bundles, bool append = false);
[[nodiscard]] std::vector<ContractBundle> load(const std::filesystem::path& path);

}  // namespace hpscan::dataset
