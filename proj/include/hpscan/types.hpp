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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hpscan {

// Wei amounts are exact; overflow past 256 bits throws.
using Wei = boost::multiprecision::checked_uint256_t;
// Signed, unbounded; used for per-account balance deltas.
using WeiDelta = boost::multiprecision::cpp_int;

using Bytes = std::vector<std::uint8_t>;

// Lowercase "0x"-prefixed hex. Empty string means "no address".
using Address = std::string;
using TxHash = std::string;

inline constexpr std::string_view kAbsentToken{"absent"};

enum class Technique : std::uint8_t {
    kNone,
    kBalanceDisorder,           // BD
    kInheritanceDisorder,       // ID
    kSkipEmptyStringLiteral,    // SESL
    kTypeDeductionOverflow,     // TDO
    kUninitialisedStruct,       // US
    kHiddenStateUpdate,         // HSU
    kHiddenTransfer,            // HT
    kStrawManContract,          // SMC
    kUnexecutedCall,            // UC
    kMapKeyEncodingTrick,       // MKET
};

inline constexpr std::size_t kTechniqueCount{11};

[[nodiscard]] std::string_view technique_token(Technique t) noexcept;
[[nodiscard]] std::string_view technique_name(Technique t) noexcept;
// Accepts the short token ("HSU") case-insensitively.
[[nodiscard]] std::optional<Technique> parse_technique(std::string_view token) noexcept;

struct HoneypotLabel {
    bool is_honeypot{false};
    Technique technique{Technique::kNone};

    [[nodiscard]] static HoneypotLabel honeypot(Technique t);
    [[nodiscard]] static HoneypotLabel negative() noexcept { return {}; }

    friend bool operator==(const HoneypotLabel&, const HoneypotLabel&) = default;
};

struct Contract {
    Address address;
    Address creator;
    Bytes bytecode;
    std::uint64_t creation_block{0};
    TxHash creation_tx_hash;

    friend bool operator==(const Contract&, const Contract&) = default;
};

struct NormalTransaction {
    TxHash hash;
    std::uint64_t block_number{0};
    std::uint64_t transaction_index{0};
    std::uint64_t timestamp{0};
    Address from;
    Address to;
    Address contract_address;
    Wei value{0};
    std::uint64_t gas{0};
    std::uint64_t gas_used{0};
    bool is_error{false};

    [[nodiscard]] bool is_creation() const noexcept { return to.empty() && !contract_address.empty(); }
    // `to` for calls, `contract_address` for creations
    [[nodiscard]] const Address& receiver() const noexcept { return to.empty() ? contract_address : to; }

    friend bool operator==(const NormalTransaction&, const NormalTransaction&) = default;
};

struct InternalTransaction {
    TxHash parent_hash;
    Address from;
    Address to;
    Address contract_address;
    Wei value{0};
    std::uint64_t gas{0};
    std::uint64_t gas_used{0};
    bool is_error{false};

    [[nodiscard]] bool is_creation() const noexcept { return !contract_address.empty(); }
    [[nodiscard]] const Address& receiver() const noexcept { return to.empty() ? contract_address : to; }

    friend bool operator==(const InternalTransaction&, const InternalTransaction&) = default;
};

struct SourceInfo {
    bool has_source_code{false};
    std::uint64_t source_line_count{0};
    std::string compiler_version_raw;
    std::string compiler_minor{kAbsentToken};
    std::string compiler_patch{kAbsentToken};
    std::uint64_t compiler_runs{0};
    std::optional<std::string> library;

    friend bool operator==(const SourceInfo&, const SourceInfo&) = default;
};

// Everything known about one contract after ingestion.
struct ContractBundle {
    Contract contract;
    SourceInfo source;
    std::vector<NormalTransaction> normals;
    std::vector<InternalTransaction> internals;
    // Unknown addresses produce an empty bundle with found == false.
    bool found{true};
    // Absent for contracts nobody has labelled (triage pool).
    std::optional<HoneypotLabel> label;

    friend bool operator==(const ContractBundle&, const ContractBundle&) = default;
};

}  // namespace hpscan
