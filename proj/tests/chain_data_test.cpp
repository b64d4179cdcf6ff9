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


#include <doctest.h>

#include <hpscan/chain_data.hpp>
#include <hpscan/error.hpp>

#include "test_util.hpp"

using namespace hpscan;
using test::addr;

TEST_CASE("addresses and hashes are lowercase-normalized") {
    CHECK(normalize_address("0xAbCdEf0123456789abcdef0123456789ABCDEF01", "to") ==
          "0xabcdef0123456789abcdef0123456789abcdef01");
    CHECK(normalize_address("", "to").empty());
    CHECK_THROWS_AS(static_cast<void>(normalize_address("0x1234", "to")), ParseError);
    CHECK_THROWS_AS(static_cast<void>(normalize_address("0xzz" + std::string(38, '0'), "to")), ParseError);
    try {
        static_cast<void>(normalize_address("nope", "contractAddress"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.field() == "contractAddress");
    }
    CHECK(normalize_hash("0x" + std::string(64, 'A'), "hash") == "0x" + std::string(64, 'a'));
}

TEST_CASE("wei parsing is exact to 256 bits") {
    const std::string max{"115792089237316195423570985008687907853269984665640564039457584007913129639935"};
    CHECK(to_decimal(parse_wei(max, "value")) == max);
    CHECK(to_decimal(parse_wei("0", "value")) == "0");
    CHECK_THROWS_AS(static_cast<void>(parse_wei(max.substr(0, max.size() - 1) + "6", "value")), ParseError);
    CHECK_THROWS_AS(static_cast<void>(parse_wei("-1", "value")), ParseError);
    CHECK_THROWS_AS(static_cast<void>(parse_wei("12a", "value")), ParseError);
    CHECK(parse_u64("18446744073709551615", "gas") == 18446744073709551615ULL);
    CHECK_THROWS_AS(static_cast<void>(parse_u64("18446744073709551616", "gas")), ParseError);
}

TEST_CASE("compiler versions split on the first two dots") {
    CHECK(parse_compiler_version("v0.4.19+commit.c4cbbb05") == CompilerVersion{"0", "4", "19+commit.c4cbbb05"});
    CHECK(parse_compiler_version("") == CompilerVersion{"absent", "absent", "absent"});
    CHECK(parse_compiler_version("v0.5.0") == CompilerVersion{"0", "5", "0"});
    CHECK(parse_compiler_version("0.4") == CompilerVersion{});
    CHECK(parse_compiler_version("vyper:0.1.0b4").patch == "0b4");
}

TEST_CASE("source lines and source info") {
    CHECK(count_source_lines("") == 0);
    CHECK(count_source_lines("a") == 1);
    CHECK(count_source_lines("a\nb\n") == 2);
    CHECK(count_source_lines("a\nb\nc") == 3);

    const auto none{make_source_info("", "v0.4.19+commit.c4cbbb05", 200, "")};
    CHECK_FALSE(none.has_source_code);
    CHECK(none.source_line_count == 0);
    CHECK(none.compiler_minor == "absent");
    CHECK(none.compiler_patch == "absent");
    CHECK_FALSE(none.library.has_value());

    const auto some{make_source_info("pragma solidity ^0.4.19;\ncontract A {}\n", "v0.4.19+commit.c4cbbb05", 200,
                                     "SafeMath")};
    CHECK(some.has_source_code);
    CHECK(some.source_line_count == 2);
    CHECK(some.compiler_minor == "4");
    CHECK(some.compiler_patch == "19+commit.c4cbbb05");
    CHECK(some.compiler_runs == 200);
    CHECK(some.library == "SafeMath");
}

TEST_CASE("bytecode hash is SHA-256 of the raw bytes") {
    CHECK(to_hex(bytecode_hash({}), false) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    const Bytes abc{'a', 'b', 'c'};
    CHECK(to_hex(bytecode_hash(abc), false) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    Bytes a{0x60, 0x80, 0x60, 0x40};
    Bytes b{a};
    CHECK(bytecode_hash(a) == bytecode_hash(b));
    b[3] = 0x41;
    CHECK(bytecode_hash(a) != bytecode_hash(b));
}

TEST_CASE("hex round trip") {
    const Bytes bytes{0x00, 0xff, 0x10};
    CHECK(to_hex(bytes) == "0x00ff10");
    CHECK(from_hex("0x00FF10", "code") == bytes);
    CHECK(from_hex("00ff10", "code") == bytes);
    CHECK(from_hex("0x", "code").empty());
    CHECK_THROWS_AS(static_cast<void>(from_hex("0x0", "code")), ParseError);
}

namespace {
Contract contract(unsigned n, Bytes code) {
    Contract c;
    c.address = addr(n);
    c.creator = addr(1000 + n);
    c.bytecode = std::move(code);
    c.creation_tx_hash = test::txhash(n);
    return c;
}
}  // namespace

TEST_CASE("labels propagate through bytecode-hash groups") {
    const Bytes shared{0x60, 0x01};
    const std::vector<Contract> contracts{contract(1, shared), contract(2, shared), contract(3, shared),
                                          contract(4, Bytes{0x60, 0x02})};
    const auto labels{propagate_labels(contracts, {{addr(2), HoneypotLabel::honeypot(Technique::kHiddenStateUpdate)}})};
    REQUIRE(labels.size() == 4);
    for (unsigned i{1}; i <= 3; ++i) CHECK(labels.at(addr(i)) == HoneypotLabel{true, Technique::kHiddenStateUpdate});
    CHECK(labels.at(addr(4)) == HoneypotLabel::negative());

    // A seed for an address that was not ingested changes nothing.
    const auto unrelated{propagate_labels(contracts, {{addr(99), HoneypotLabel::honeypot(Technique::kHiddenTransfer)}})};
    for (const auto& [_, l] : unrelated) CHECK(l == HoneypotLabel::negative());

    try {
        static_cast<void>(propagate_labels(contracts, {{addr(1), HoneypotLabel::honeypot(Technique::kHiddenStateUpdate)},
                                                       {addr(3), HoneypotLabel::honeypot(Technique::kBalanceDisorder)}}));
        FAIL("expected a conflict");
    } catch (const LabelConflictError& e) {
        const std::string what{e.what()};
        CHECK(what.find(addr(1)) != std::string::npos);
        CHECK(what.find(addr(3)) != std::string::npos);
    }
    // Agreeing seeds in one group are fine.
    CHECK_NOTHROW(static_cast<void>(
        propagate_labels(contracts, {{addr(1), HoneypotLabel::honeypot(Technique::kHiddenStateUpdate)},
                                     {addr(3), HoneypotLabel::honeypot(Technique::kHiddenStateUpdate)}})));
}

TEST_CASE("technique tokens") {
    CHECK(technique_token(Technique::kHiddenStateUpdate) == "HSU");
    CHECK(parse_technique("hsu") == Technique::kHiddenStateUpdate);
    CHECK(parse_technique("NONE") == Technique::kNone);
    CHECK_FALSE(parse_technique("XYZ").has_value());
    CHECK_THROWS_AS(static_cast<void>(HoneypotLabel::honeypot(Technique::kNone)), InputError);
    for (std::size_t i{0}; i < kTechniqueCount; ++i) {
        const auto t{static_cast<Technique>(i)};
        CHECK(parse_technique(technique_token(t)) == t);
    }
}

TEST_CASE("bundle validation reports each violated invariant") {
    ContractBundle b;
    b.contract = contract(1, {0x60});
    b.normals.push_back(test::creation(1, b.contract.creator, b.contract.address));
    CHECK(validate_bundle(b).empty());

    auto bad{b};
    bad.normals[0].gas_used = bad.normals[0].gas + 1;
    bad.normals[0].to = addr(5);
    bad.internals.push_back(test::transfer(test::txhash(77), addr(1), addr(2), 1));
    bad.label = HoneypotLabel{true, Technique::kNone};
    bad.contract.creator = "0xABCDEF0123456789abcdef0123456789abcdef01";
    const auto problems{validate_bundle(bad)};
    CHECK(problems.size() >= 5);
}
