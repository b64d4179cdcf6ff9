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
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <hpscan/types.hpp>

// Fund-flow cases: every normal transaction (with the internal transactions it
// triggers) is summarised by eight variables describing who gained or lost wei.
// Of the 2^5 * 3^3 = 864 raw assignments, 244 are consistent; they get dense IDs
// in the mixed-radix order
//   sender [creator, other], creation [yes, no], error [yes, no],
//   balanceCreator, balanceContract, balanceSender [up, unchanged, down],
//   balanceOtherPositive [yes, no], balanceOtherNegative [yes, no]
// with balanceSender collapsed to not-applicable when sender = creator.
// The IDs are a wire format (feature names fundFlowCase0..243); do not reorder.
namespace hpscan::fundflow {

enum class Sender : std::uint8_t { kCreator, kOther };
enum class Balance : std::uint8_t { kUp, kUnchanged, kDown, kNotApplicable };

struct FundFlowCase {
    Sender sender{Sender::kCreator};
    bool creation{false};
    bool error{false};
    Balance balance_creator{Balance::kUnchanged};
    Balance balance_contract{Balance::kUnchanged};
    Balance balance_sender{Balance::kNotApplicable};
    bool other_positive{false};
    bool other_negative{false};

    friend bool operator==(const FundFlowCase&, const FundFlowCase&) = default;
};

struct CaseId {
    std::uint8_t value{0};

    friend auto operator<=>(const CaseId&, const CaseId&) = default;
};

inline constexpr std::size_t kCaseCount{244};
inline constexpr std::size_t kRawCaseCount{864};

// creation => creator; balanceSender n/a <=> sender = creator; some balance up
// <=> some balance down.
[[nodiscard]] bool is_valid(const FundFlowCase& c) noexcept;

[[nodiscard]] std::vector<std::pair<CaseId, FundFlowCase>> enumerate_valid_cases();
[[nodiscard]] const FundFlowCase& decode(CaseId id);
// nullopt for tuples that fail is_valid
[[nodiscard]] std::optional<CaseId> encode(const FundFlowCase& c) noexcept;

// Builds the tuple for one event. `internals` are the transactions triggered by
// `tx`; errored transfers move nothing but set error = yes.
[[nodiscard]] FundFlowCase event_tuple(const NormalTransaction& tx, std::span<const InternalTransaction> internals,
                                       const Address& creator, const Address& contract);
[[nodiscard]] CaseId classify_event(const NormalTransaction& tx, std::span<const InternalTransaction> internals,
                                    const Address& creator, const Address& contract);

// One CaseId per normal transaction of the bundle, in stored order.
[[nodiscard]] std::vector<CaseId> contract_events(const ContractBundle& bundle);

struct FrequencyVector {
    std::array<double, kCaseCount> freq{};
    std::size_t event_count{0};
};

// Throws InputError on an empty event list.
[[nodiscard]] FrequencyVector frequency_vector(std::span<const CaseId> events);

// Partial assignment over the eight variables; unset fields match anything.
struct CasePattern {
    std::optional<Sender> sender;
    std::optional<bool> creation;
    std::optional<bool> error;
    std::optional<Balance> balance_creator;
    std::optional<Balance> balance_contract;
    std::optional<Balance> balance_sender;
    std::optional<bool> other_positive;
    std::optional<bool> other_negative;

    [[nodiscard]] bool matches(const FundFlowCase& c) const noexcept;
};

// Summed frequency of all cases matching `pattern`, per contract.
[[nodiscard]] std::vector<double> query_cases(const CasePattern& pattern, std::span<const FrequencyVector> contracts);

[[nodiscard]] std::string_view token(Balance b) noexcept;
[[nodiscard]] std::optional<Balance> parse_balance(std::string_view s) noexcept;
[[nodiscard]] std::optional<Sender> parse_sender(std::string_view s) noexcept;

// Short human description, omitting false flags and unchanged balances:
// "sender=creator, balanceCreator=negative, balanceContract=positive".
[[nodiscard]] std::string describe(const FundFlowCase& c);
[[nodiscard]] std::string column_name(CaseId id);

// One tab-separated line per case: id, the eight values, description.
void write_catalog(std::ostream& out);
// Header "address,fundFlowCase0,...,fundFlowCase243".
void write_frequency_csv(std::ostream& out, std::span<const Address> addresses,
                         std::span<const FrequencyVector> vectors);

}  // namespace hpscan::fundflow
