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

#include <hpscan/fundflow.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <unordered_map>

#include <hpscan/error.hpp>

namespace hpscan::fundflow {

namespace {

    constexpr std::array<Balance, 3> kMoves{Balance::kUp, Balance::kUnchanged, Balance::kDown};
    constexpr std::array<bool, 2> kYesNo{true, false};

    // Packs any tuple, valid or not, into [0, 2*2*2*3*3*4*2*2).
    constexpr std::size_t kPackedSpace{1152};

    std::size_t pack(const FundFlowCase& c) noexcept {
        std::size_t i{static_cast<std::size_t>(c.sender)};
        i = i * 2 + (c.creation ? 0 : 1);
        i = i * 2 + (c.error ? 0 : 1);
        i = i * 3 + std::min<std::size_t>(static_cast<std::size_t>(c.balance_creator), 2);
        i = i * 3 + std::min<std::size_t>(static_cast<std::size_t>(c.balance_contract), 2);
        i = i * 4 + static_cast<std::size_t>(c.balance_sender);
        i = i * 2 + (c.other_positive ? 0 : 1);
        i = i * 2 + (c.other_negative ? 0 : 1);
        return i;
    }

    struct Catalog {
        std::vector<FundFlowCase> cases;
        std::array<std::int16_t, kPackedSpace> ids{};

        Catalog() {
            ids.fill(-1);
            for (const Sender sender : {Sender::kCreator, Sender::kOther}) {
                for (const bool creation : kYesNo) {
                    for (const bool error : kYesNo) {
                        for (const Balance creator : kMoves) {
                            for (const Balance contract : kMoves) {
                                const auto senders{sender == Sender::kCreator
                                                       ? std::vector<Balance>{Balance::kNotApplicable}
                                                       : std::vector<Balance>(kMoves.begin(), kMoves.end())};
                                for (const Balance sender_balance : senders) {
                                    for (const bool pos : kYesNo) {
                                        for (const bool neg : kYesNo) {
                                            const FundFlowCase c{sender, creation, error, creator, contract,
                                                                 sender_balance, pos, neg};
                                            if (!is_valid(c)) continue;
                                            ids[pack(c)] = static_cast<std::int16_t>(cases.size());
                                            cases.push_back(c);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    };

    const Catalog& catalog() {
        static const Catalog instance;
        return instance;
    }

    Balance direction(const WeiDelta& d) noexcept {
        if (d > 0) return Balance::kUp;
        if (d < 0) return Balance::kDown;
        return Balance::kUnchanged;
    }

    std::string_view yes_no(bool b) noexcept { return b ? "yes" : "no"; }

    std::string_view signed_word(Balance b) noexcept {
        return b == Balance::kUp ? "positive" : b == Balance::kDown ? "negative" : "unchanged";
    }

}  // namespace

bool is_valid(const FundFlowCase& c) noexcept {
    if (c.creation && c.sender != Sender::kCreator) return false;
    if ((c.balance_sender == Balance::kNotApplicable) != (c.sender == Sender::kCreator)) return false;
    if (c.balance_creator == Balance::kNotApplicable || c.balance_contract == Balance::kNotApplicable) return false;
    const bool up{c.balance_creator == Balance::kUp || c.balance_contract == Balance::kUp ||
                  c.balance_sender == Balance::kUp || c.other_positive};
    const bool down{c.balance_creator == Balance::kDown || c.balance_contract == Balance::kDown ||
                    c.balance_sender == Balance::kDown || c.other_negative};
    return up == down;
}

std::vector<std::pair<CaseId, FundFlowCase>> enumerate_valid_cases() {
    const auto& cases{catalog().cases};
    std::vector<std::pair<CaseId, FundFlowCase>> out;
    out.reserve(cases.size());
    for (std::size_t i{0}; i < cases.size(); ++i) out.emplace_back(CaseId{static_cast<std::uint8_t>(i)}, cases[i]);
    return out;
}

const FundFlowCase& decode(CaseId id) {
    const auto& cases{catalog().cases};
    if (id.value >= cases.size()) throw InputError{"case id out of range: " + std::to_string(id.value)};
    return cases[id.value];
}

std::optional<CaseId> encode(const FundFlowCase& c) noexcept {
    if (!is_valid(c)) return std::nullopt;
    const auto id{catalog().ids[pack(c)]};
    if (id < 0) return std::nullopt;
    return CaseId{static_cast<std::uint8_t>(id)};
}

FundFlowCase event_tuple(const NormalTransaction& tx, std::span<const InternalTransaction> internals,
                         const Address& creator, const Address& contract) {
    std::map<Address, WeiDelta> delta;
    const auto move = [&](const Address& from, const Address& to, const Wei& value) {
        if (value == 0) return;
        const WeiDelta amount{value};
        delta[from] -= amount;
        delta[to] += amount;
    };

    FundFlowCase c;
    c.sender = tx.from == creator ? Sender::kCreator : Sender::kOther;
    c.creation = tx.is_creation() && tx.contract_address == contract;
    c.error = tx.is_error;
    if (!tx.is_error) move(tx.from, tx.receiver(), tx.value);
    for (const auto& itx : internals) {
        if (itx.is_error) {
            c.error = true;
            continue;
        }
        move(itx.from, itx.receiver(), itx.value);
    }

    const auto delta_of = [&](const Address& a) {
        const auto it{delta.find(a)};
        return it == delta.end() ? WeiDelta{0} : it->second;
    };
    c.balance_creator = direction(delta_of(creator));
    c.balance_contract = direction(delta_of(contract));
    c.balance_sender = c.sender == Sender::kCreator ? Balance::kNotApplicable : direction(delta_of(tx.from));
    for (const auto& [account, d] : delta) {
        if (account == creator || account == contract || account == tx.from) continue;
        if (d > 0) c.other_positive = true;
        if (d < 0) c.other_negative = true;
    }
    return c;
}

CaseId classify_event(const NormalTransaction& tx, std::span<const InternalTransaction> internals,
                      const Address& creator, const Address& contract) {
    const auto tuple{event_tuple(tx, internals, creator, contract)};
    const auto id{encode(tuple)};
    // Unreachable: deltas sum to zero, so some balance rises iff another falls.
    if (!id) throw std::logic_error{"fund-flow tuple outside the case catalog"};
    return *id;
}

std::vector<CaseId> contract_events(const ContractBundle& bundle) {
    std::unordered_map<TxHash, std::vector<InternalTransaction>> by_parent;
    for (const auto& itx : bundle.internals) by_parent[itx.parent_hash].push_back(itx);

    std::vector<CaseId> events;
    events.reserve(bundle.normals.size());
    static const std::vector<InternalTransaction> kNone;
    for (const auto& tx : bundle.normals) {
        const auto it{by_parent.find(tx.hash)};
        events.push_back(classify_event(tx, it == by_parent.end() ? kNone : it->second, bundle.contract.creator,
                                        bundle.contract.address));
    }
    return events;
}

FrequencyVector frequency_vector(std::span<const CaseId> events) {
    if (events.empty()) throw InputError{"no fund-flow events: contract unknown to the dataset"};
    std::array<std::size_t, kCaseCount> counts{};
    for (const auto id : events) ++counts.at(id.value);
    FrequencyVector v;
    v.event_count = events.size();
    const auto n{static_cast<double>(events.size())};
    for (std::size_t i{0}; i < kCaseCount; ++i) v.freq[i] = static_cast<double>(counts[i]) / n;
    return v;
}

bool CasePattern::matches(const FundFlowCase& c) const noexcept {
    return (!sender || *sender == c.sender) && (!creation || *creation == c.creation) &&
           (!error || *error == c.error) && (!balance_creator || *balance_creator == c.balance_creator) &&
           (!balance_contract || *balance_contract == c.balance_contract) &&
           (!balance_sender || *balance_sender == c.balance_sender) &&
           (!other_positive || *other_positive == c.other_positive) &&
           (!other_negative || *other_negative == c.other_negative);
}

std::vector<double> query_cases(const CasePattern& pattern, std::span<const FrequencyVector> contracts) {
    std::vector<std::size_t> matching;
    const auto& cases{catalog().cases};
    for (std::size_t i{0}; i < cases.size(); ++i) {
        if (pattern.matches(cases[i])) matching.push_back(i);
    }
    std::vector<double> out;
    out.reserve(contracts.size());
    for (const auto& v : contracts) {
        double sum{0.0};
        for (const auto i : matching) sum += v.freq[i];
        out.push_back(sum);
    }
    return out;
}

std::string_view token(Balance b) noexcept {
    switch (b) {
        case Balance::kUp: return "up";
        case Balance::kUnchanged: return "unchanged";
        case Balance::kDown: return "down";
        case Balance::kNotApplicable: return "n/a";
    }
    return "?";
}

std::optional<Balance> parse_balance(std::string_view s) noexcept {
    if (s == "up" || s == "positive") return Balance::kUp;
    if (s == "unchanged") return Balance::kUnchanged;
    if (s == "down" || s == "negative") return Balance::kDown;
    if (s == "n/a" || s == "na") return Balance::kNotApplicable;
    return std::nullopt;
}

std::optional<Sender> parse_sender(std::string_view s) noexcept {
    if (s == "creator") return Sender::kCreator;
    if (s == "other") return Sender::kOther;
    return std::nullopt;
}

std::string describe(const FundFlowCase& c) {
    std::string out{c.sender == Sender::kCreator ? "sender=creator" : "sender=other"};
    if (c.creation) out += ", creation=True";
    if (c.error) out += ", error=True";
    const auto balance = [&](const char* name, Balance b) {
        if (b == Balance::kUp || b == Balance::kDown) {
            out += ", ";
            out += name;
            out += '=';
            out += signed_word(b);
        }
    };
    balance("balanceCreator", c.balance_creator);
    balance("balanceContract", c.balance_contract);
    balance("balanceSender", c.balance_sender);
    if (c.other_positive) out += ", balanceOtherPositive=True";
    if (c.other_negative) out += ", balanceOtherNegative=True";
    return out;
}

std::string column_name(CaseId id) { return "fundFlowCase" + std::to_string(id.value); }

void write_catalog(std::ostream& out) {
    for (const auto& [id, c] : enumerate_valid_cases()) {
        out << static_cast<int>(id.value) << '\t' << (c.sender == Sender::kCreator ? "creator" : "other") << '\t'
            << yes_no(c.creation) << '\t' << yes_no(c.error) << '\t' << token(c.balance_creator) << '\t'
            << token(c.balance_contract) << '\t' << token(c.balance_sender) << '\t' << yes_no(c.other_positive)
            << '\t' << yes_no(c.other_negative) << '\t' << describe(c) << '\n';
    }
}

void write_frequency_csv(std::ostream& out, std::span<const Address> addresses, std::span<const FrequencyVector> vectors) {
    if (addresses.size() != vectors.size()) throw InputError{"address/vector count mismatch"};
    out << "address";
    for (std::size_t i{0}; i < kCaseCount; ++i) out << ",fundFlowCase" << i;
    out << '\n';
    char buf[32];
    for (std::size_t r{0}; r < addresses.size(); ++r) {
        out << addresses[r];
        for (const double f : vectors[r].freq) {
            std::snprintf(buf, sizeof buf, "%.9g", f);
            out << ',' << buf;
        }
        out << '\n';
    }
}

}  // namespace hpscan::fundflow
