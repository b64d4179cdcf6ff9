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

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <hpscan/types.hpp>

namespace hpscan {

using Sha256Digest = std::array<std::uint8_t, 32>;

// Lowercases and validates a 20-byte address. Empty input stays empty.
// Throws ParseError(field) on malformed input.
[[nodiscard]] Address normalize_address(std::string_view raw, std::string_view field);
// Same for 32-byte transaction hashes.
[[nodiscard]] TxHash normalize_hash(std::string_view raw, std::string_view field);

[[nodiscard]] std::string to_hex(std::span<const std::uint8_t> bytes, bool prefix = true);
// Accepts an optional 0x prefix; odd length or non-hex characters throw ParseError.
[[nodiscard]] Bytes from_hex(std::string_view hex, std::string_view field);

// Decimal string to exact wei. Throws ParseError on junk or > 256 bits.
[[nodiscard]] Wei parse_wei(std::string_view decimal, std::string_view field);
[[nodiscard]] std::uint64_t parse_u64(std::string_view decimal, std::string_view field);
[[nodiscard]] std::string to_decimal(const Wei& value);

struct CompilerVersion {
    std::string major{kAbsentToken};
    std::string minor{kAbsentToken};
    std::string patch{kAbsentToken};

    friend bool operator==(const CompilerVersion&, const CompilerVersion&) = default;
};

// "v0.4.19+commit.c4cbbb05" -> {"0", "4", "19+commit.c4cbbb05"}. Total: anything
// without two dots (or with an empty component) maps to all-absent tokens.
[[nodiscard]] CompilerVersion parse_compiler_version(std::string_view raw);

// Newline-delimited line count; a trailing newline does not open a new line.
[[nodiscard]] std::uint64_t count_source_lines(std::string_view source);

// Builds SourceInfo from an explorer's verified-source record. Empty source
// text yields the sentinel record.
[[nodiscard]] SourceInfo make_source_info(std::string_view source_code, std::string_view compiler_version,
                                          std::uint64_t runs, std::string_view library);

[[nodiscard]] Sha256Digest bytecode_hash(std::span<const std::uint8_t> bytecode);

// Every contract gets a label: the seed label of its bytecode-hash group, or
// (false, NONE). Throws LabelConflictError when two seeds in one group disagree.
[[nodiscard]] std::map<Address, HoneypotLabel> propagate_labels(std::span<const Contract> contracts,
                                                                const std::map<Address, HoneypotLabel>& seeds);

// Checks the record invariants of a bundle; returns one message per violation.
[[nodiscard]] std::vector<std::string> validate_bundle(const ContractBundle& bundle);

}  // namespace hpscan
