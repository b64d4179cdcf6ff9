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

#include <hpscan/chain_data.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include <openssl/sha.h>

#include <hpscan/error.hpp>

namespace hpscan {

namespace {

    constexpr std::array<std::string_view, kTechniqueCount> kTokens{
        "NONE", "BD", "ID", "SESL", "TDO", "US", "HSU", "HT", "SMC", "UC", "MKET",
    };

    constexpr std::array<std::string_view, kTechniqueCount> kNames{
        "None",
        "Balance Disorder",
        "Inheritance Disorder",
        "Skip Empty String Literal",
        "Type Deduction Overflow",
        "Uninitialised Struct",
        "Hidden State Update",
        "Hidden Transfer",
        "Straw Man Contract",
        "Unexecuted Call",
        "Map Key Encoding Trick",
    };

    int hex_value(char c) noexcept {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    }

    std::string_view strip_prefix(std::string_view hex) noexcept {
        if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
        return hex;
    }

    std::string normalize_fixed_hex(std::string_view raw, std::string_view field, std::size_t bytes) {
        if (raw.empty()) return {};
        const std::string_view digits{strip_prefix(raw)};
        if (digits.size() != bytes * 2) {
            throw ParseError{std::string{field}, "expected " + std::to_string(bytes * 2) + " hex digits, got '" +
                                                     std::string{raw} + "'"};
        }
        std::string out{"0x"};
        out.reserve(2 + digits.size());
        for (const char c : digits) {
            if (hex_value(c) < 0) throw ParseError{std::string{field}, "non-hex character in '" + std::string{raw} + "'"};
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
        return out;
    }

}  // namespace

std::string_view technique_token(Technique t) noexcept { return kTokens[static_cast<std::size_t>(t)]; }

std::string_view technique_name(Technique t) noexcept { return kNames[static_cast<std::size_t>(t)]; }

std::optional<Technique> parse_technique(std::string_view token) noexcept {
    for (std::size_t i{0}; i < kTechniqueCount; ++i) {
        const auto& candidate{kTokens[i]};
        if (candidate.size() != token.size()) continue;
        bool same{true};
        for (std::size_t j{0}; j < token.size() && same; ++j) {
            same = std::toupper(static_cast<unsigned char>(token[j])) == candidate[j];
        }
        if (same) return static_cast<Technique>(i);
    }
    return std::nullopt;
}

HoneypotLabel HoneypotLabel::honeypot(Technique t) {
    if (t == Technique::kNone) throw InputError{"a honeypot label needs a technique"};
    return {true, t};
}

Address normalize_address(std::string_view raw, std::string_view field) { return normalize_fixed_hex(raw, field, 20); }

TxHash normalize_hash(std::string_view raw, std::string_view field) { return normalize_fixed_hex(raw, field, 32); }

std::string to_hex(std::span<const std::uint8_t> bytes, bool prefix) {
    static constexpr char kDigits[]{"0123456789abcdef"};
    std::string out;
    out.reserve(bytes.size() * 2 + 2);
    if (prefix) out += "0x";
    for (const auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex, std::string_view field) {
    const std::string_view digits{strip_prefix(hex)};
    if (digits.size() % 2 != 0) throw ParseError{std::string{field}, "odd number of hex digits"};
    Bytes out(digits.size() / 2);
    for (std::size_t i{0}; i < out.size(); ++i) {
        const int hi{hex_value(digits[2 * i])};
        const int lo{hex_value(digits[2 * i + 1])};
        if (hi < 0 || lo < 0) throw ParseError{std::string{field}, "non-hex character"};
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

Wei parse_wei(std::string_view decimal, std::string_view field) {
    if (decimal.empty()) throw ParseError{std::string{field}, "empty integer"};
    Wei result{0};
    try {
        for (const char c : decimal) {
            if (c < '0' || c > '9') {
                throw ParseError{std::string{field}, "not a decimal integer: '" + std::string{decimal} + "'"};
            }
            result = result * 10 + static_cast<unsigned>(c - '0');
        }
    } catch (const std::overflow_error&) {
        throw ParseError{std::string{field}, "value exceeds 256 bits"};
    }
    return result;
}

std::uint64_t parse_u64(std::string_view decimal, std::string_view field) {
    std::uint64_t out{0};
    const auto* end{decimal.data() + decimal.size()};
    const auto [ptr, ec]{std::from_chars(decimal.data(), end, out)};
    if (decimal.empty() || ec != std::errc{} || ptr != end) {
        throw ParseError{std::string{field}, "not a 64-bit decimal integer: '" + std::string{decimal} + "'"};
    }
    return out;
}

std::string to_decimal(const Wei& value) { return value.str(); }

CompilerVersion parse_compiler_version(std::string_view raw) {
    if (!raw.empty() && (raw.front() == 'v' || raw.front() == 'V')) raw.remove_prefix(1);
    const auto first{raw.find('.')};
    if (first == std::string_view::npos) return {};
    const auto second{raw.find('.', first + 1)};
    if (second == std::string_view::npos) return {};
    CompilerVersion v{std::string{raw.substr(0, first)}, std::string{raw.substr(first + 1, second - first - 1)},
                      std::string{raw.substr(second + 1)}};
    if (v.major.empty() || v.minor.empty() || v.patch.empty()) return {};
    return v;
}

std::uint64_t count_source_lines(std::string_view source) {
    if (source.empty()) return 0;
    auto lines{static_cast<std::uint64_t>(std::count(source.begin(), source.end(), '\n'))};
    if (source.back() != '\n') ++lines;
    return lines;
}

SourceInfo make_source_info(std::string_view source_code, std::string_view compiler_version, std::uint64_t runs,
                            std::string_view library) {
    SourceInfo info;
    if (source_code.empty()) return info;
    info.has_source_code = true;
    info.source_line_count = count_source_lines(source_code);
    info.compiler_version_raw = std::string{compiler_version};
    const auto version{parse_compiler_version(compiler_version)};
    info.compiler_minor = version.minor;
    info.compiler_patch = version.patch;
    info.compiler_runs = runs;
    if (!library.empty()) info.library = std::string{library};
    return info;
}

Sha256Digest bytecode_hash(std::span<const std::uint8_t> bytecode) {
    Sha256Digest digest{};
    SHA256(bytecode.data(), bytecode.size(), digest.data());
    return digest;
}

std::map<Address, HoneypotLabel> propagate_labels(std::span<const Contract> contracts,
                                                  const std::map<Address, HoneypotLabel>& seeds) {
    std::map<Address, Sha256Digest> hash_of;
    for (const auto& c : contracts) hash_of.emplace(c.address, bytecode_hash(c.bytecode));

    // Seeds whose address was never ingested have no hash and cannot propagate.
    std::map<Sha256Digest, std::pair<Address, HoneypotLabel>> group_label;
    for (const auto& [address, label] : seeds) {
        const auto it{hash_of.find(address)};
        if (it == hash_of.end()) continue;
        const auto [existing, inserted]{group_label.try_emplace(it->second, address, label)};
        if (!inserted && existing->second.second != label) {
            throw LabelConflictError{existing->second.first, address};
        }
    }

    std::map<Address, HoneypotLabel> out;
    for (const auto& c : contracts) {
        const auto it{group_label.find(hash_of.at(c.address))};
        out[c.address] = it == group_label.end() ? HoneypotLabel::negative() : it->second.second;
    }
    return out;
}

std::vector<std::string> validate_bundle(const ContractBundle& bundle) {
    std::vector<std::string> problems;
    const auto check_address = [&](const Address& a, const std::string& what) {
        if (a.empty()) return;
        try {
            if (normalize_address(a, what) != a) problems.push_back(what + " is not lowercase-normalized");
        } catch (const ParseError& e) {
            problems.emplace_back(e.what());
        }
    };
    const auto& c{bundle.contract};
    check_address(c.address, "contract.address");
    check_address(c.creator, "contract.creator");
    if (!bundle.found) return problems;

    std::set<TxHash> hashes;
    for (const auto& tx : bundle.normals) {
        hashes.insert(tx.hash);
        check_address(tx.from, "normal.from");
        check_address(tx.to, "normal.to");
        check_address(tx.contract_address, "normal.contractAddress");
        if (tx.gas_used > tx.gas) problems.push_back("normal " + tx.hash + ": gasUsed > gas");
        if (!tx.to.empty() && !tx.contract_address.empty()) {
            problems.push_back("normal " + tx.hash + ": both to and contractAddress set");
        }
    }
    if (!c.creation_tx_hash.empty() && !hashes.contains(c.creation_tx_hash)) {
        problems.push_back("creation transaction " + c.creation_tx_hash + " missing from normal transactions");
    }
    for (const auto& itx : bundle.internals) {
        check_address(itx.from, "internal.from");
        check_address(itx.to, "internal.to");
        check_address(itx.contract_address, "internal.contractAddress");
        if (!hashes.contains(itx.parent_hash)) {
            problems.push_back("internal transaction references unknown parent " + itx.parent_hash);
        }
    }
    if (bundle.label && bundle.label->is_honeypot != (bundle.label->technique != Technique::kNone)) {
        problems.emplace_back("label technique inconsistent with isHoneypot");
    }
    return problems;
}

}  // namespace hpscan
