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

#include <sstream>

#include <hpscan/chain_data.hpp>
#include <hpscan/error.hpp>
#include <hpscan/features.hpp>

#include "test_util.hpp"

using namespace hpscan;
using namespace hpscan::features;
using hpscan::test::addr;
using hpscan::test::call;
using hpscan::test::creation;
using hpscan::test::ether;
using hpscan::test::transfer;

namespace {

const Address kCreator{addr(0xc0)};
const Address kContract{addr(0xcc)};

std::string lines(int n) {
    std::string s;
    for (int i{0}; i < n; ++i) s += "line " + std::to_string(i) + "\n";
    return s;
}

SourceInfo gift_source() {
    return make_source_info(lines(50), "v0.4.19+commit.c4cbbb05", 200, "");
}

EncodingDictionary sample_dictionary() {
    const std::vector<SourceInfo> corpus{gift_source(),
                                         make_source_info("a\n", "v0.4.24+commit.e67f0147", 0, "SafeMath"),
                                         make_source_info("b\n", "v0.5.0+commit.1d4f565a", 0, "")};
    return EncodingDictionary::fit(corpus);
}

ContractBundle gift_bundle(unsigned salt) {
    ContractBundle b;
    b.contract.address = addr(0x1000 + salt);
    b.contract.creator = kCreator;
    b.contract.bytecode = {0x60, 0x80};
    b.source = gift_source();
    b.normals = {creation(salt * 10 + 1, kCreator, b.contract.address, 0, 100),
                 call(salt * 10 + 2, kCreator, b.contract.address, ether(1), 110),
                 call(salt * 10 + 3, addr(0xa1), b.contract.address, ether(1), 130)};
    b.label = HoneypotLabel::honeypot(Technique::kHiddenStateUpdate);
    return b;
}

double value_of(const FeatureMatrix& m, std::size_t r, std::string_view name) {
    return m.at(r, m.column_index(name).value());
}

}  // namespace

TEST_CASE("dictionary is lexicographic") {
    const auto dict{sample_dictionary()};
    CHECK(dict.library == std::vector<std::string>{"SafeMath"});
    CHECK(dict.compiler_minor == std::vector<std::string>{"4", "5"});
    CHECK(dict.compiler_patch ==
          std::vector<std::string>{"0+commit.1d4f565a", "19+commit.c4cbbb05", "24+commit.e67f0147"});
    CHECK(EncodingDictionary::from_json(dict.to_json()) == dict);
    CHECK_THROWS_AS(static_cast<void>(EncodingDictionary::from_json(nlohmann::json{{"format", "other"}})), ParseError);
}

TEST_CASE("source features") {
    const auto dict{sample_dictionary()};
    Contract c;
    c.bytecode = {0x60};
    const auto s{extract_source_features(c, gift_source(), dict)};
    CHECK(s.has_byte_code);
    CHECK(s.has_source_code);
    CHECK(s.num_source_code_lines == 50);
    CHECK(s.compiler_runs == 200);
    CHECK(s.compiler_patch == std::vector<std::uint8_t>{0, 1, 0});
    CHECK(s.compiler_minor == std::vector<std::uint8_t>{1, 0});
    CHECK(s.library == std::vector<std::uint8_t>{0});

    Contract empty;
    const auto e{extract_source_features(empty, SourceInfo{}, dict)};
    CHECK_FALSE(e.has_byte_code);
    CHECK_FALSE(e.has_source_code);
    CHECK(e.compiler_patch == std::vector<std::uint8_t>{0, 0, 0});

    const auto unseen{extract_source_features(c, make_source_info("x\n", "v0.4.99+commit.ffffffff", 0, ""), dict)};
    CHECK(unseen.compiler_patch == std::vector<std::uint8_t>{0, 0, 0});
    CHECK(unseen.compiler_minor == std::vector<std::uint8_t>{1, 0});
}

TEST_CASE("minimal contract") {
    const std::vector<NormalTransaction> normals{creation(1, kCreator, kContract)};
    const auto t{extract_transaction_features(normals, {}, kCreator)};
    CHECK(t.normal_count == 1);
    CHECK(t.normal_value_mean == 0.0);
    CHECK(t.normal_value_std == 0.0);
    CHECK(t.normal_gas_mean == 100000);
    CHECK(t.normal_gas_used_mean == 60000);
    CHECK(t.normal_block_span == 0);
    CHECK(t.normal_time_span == 0);
    CHECK_FALSE(t.normal_block_delta_mean.has_value());
    CHECK_FALSE(t.normal_time_delta_std.has_value());
    CHECK_FALSE(t.has_internal_transactions);
    CHECK_FALSE(t.internal_value_mean.has_value());
    CHECK_FALSE(t.internal_to_other_ratio.has_value());
}

TEST_CASE("two-point value statistics skip errored transactions") {
    const std::vector<NormalTransaction> normals{call(1, addr(1), kContract, ether(1)),
                                                 call(2, addr(2), kContract, ether(3)),
                                                 call(3, addr(3), kContract, ether(100), 100, true)};
    const auto t{extract_transaction_features(normals, {}, kCreator)};
    CHECK(t.normal_value_mean == 2.0);
    CHECK(t.normal_value_std == 1.0);
    CHECK(t.normal_count == 3);
}

TEST_CASE("block spans and deltas use sorted order") {
    const std::vector<NormalTransaction> normals{call(3, addr(1), kContract, 0, 130), call(1, addr(1), kContract, 0, 100),
                                                 call(2, addr(1), kContract, 0, 110)};
    const auto t{extract_transaction_features(normals, {}, kCreator)};
    CHECK(t.normal_block_span == 30);
    CHECK(t.normal_block_delta_mean == 15.0);
    CHECK(t.normal_block_delta_std == 5.0);
    CHECK(t.normal_time_span == 30 * 14);
    CHECK(t.normal_time_delta_mean == 15.0 * 14);
}

TEST_CASE("other sender ratio") {
    const Address a{addr(1)}, b{addr(2)}, c{addr(3)};
    CHECK(other_sender_ratio(std::vector<Address>{kCreator, a, b, c}, kCreator) == 1.0);
    CHECK(other_sender_ratio(std::vector<Address>{kCreator, a, a, a}, kCreator) == doctest::Approx(1.0 / 3.0));
    CHECK(other_sender_ratio(std::vector<Address>{kCreator, kCreator}, kCreator) == 0.0);
    CHECK(other_sender_ratio(std::vector<Address>{}, kCreator) == 0.0);
}

TEST_CASE("internal aggregates") {
    const auto tx{call(1, addr(1), kContract, ether(1))};
    std::vector<InternalTransaction> internals{transfer(tx.hash, kContract, addr(1), ether(2)),
                                               transfer(tx.hash, kContract, kCreator, ether(4))};
    InternalTransaction spawn{transfer(tx.hash, kContract, "", 0)};
    spawn.contract_address = addr(0xdd);
    internals.push_back(spawn);
    const std::vector<NormalTransaction> normals{tx};
    const auto t{extract_transaction_features(normals, internals, kCreator)};
    CHECK(t.internal_count == 3);
    CHECK(t.has_internal_transactions);
    CHECK(t.internal_creation_count == 1);
    CHECK(t.internal_value_mean == 2.0);
    // Receivers other than the creator: addr(1) and the created contract.
    CHECK(t.internal_to_other_ratio == 1.0);
    CHECK(t.internal_other_sender_ratio == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("statistics are permutation invariant") {
    std::vector<NormalTransaction> normals;
    for (unsigned i{0}; i < 7; ++i) normals.push_back(call(i + 1, addr(i % 3), kContract, ether(i), 100 + i * i));
    const auto forward{extract_transaction_features(normals, {}, kCreator).values()};
    std::reverse(normals.begin(), normals.end());
    const auto backward{extract_transaction_features(normals, {}, kCreator).values()};
    REQUIRE(forward.size() == backward.size());
    for (std::size_t i{0}; i < forward.size(); ++i) {
        REQUIRE(forward[i].has_value() == backward[i].has_value());
        if (forward[i]) CHECK(*forward[i] == doctest::Approx(*backward[i]).epsilon(1e-12));
    }
}

TEST_CASE("column specs") {
    CHECK(column_spec("hasByteCode").kind == Kind::kFlag);
    CHECK(column_spec("numSourceCodeLines").kind == Kind::kUnbounded);
    CHECK(column_spec("compilerPatchVersion136").kind == Kind::kCategory);
    CHECK(column_spec("fundFlowCase83").family == Family::kFundFlow);
    CHECK(column_spec("normalTransactionOtherSenderRatio").kind == Kind::kRatio);
    CHECK(column_spec("internalTransactionValueMean").internal_aggregate);
    CHECK_FALSE(column_spec("hasInternalTransactions").internal_aggregate);
    CHECK(column_spec("hasInternalTransactions").family == Family::kTransaction);
    CHECK_THROWS_AS(static_cast<void>(column_spec("fundFlowCase244")), InputError);
    CHECK_THROWS_AS(static_cast<void>(column_spec("isHoneypot")), InputError);
    CHECK(parse_feature_set("fundflow") == FeatureSet::kFundFlow);
    CHECK_FALSE(parse_feature_set("everything").has_value());
}

TEST_CASE("featurize assembles documented columns") {
    const auto dict{sample_dictionary()};
    std::vector<ContractBundle> bundles{gift_bundle(1), gift_bundle(2)};
    ContractBundle unknown;
    unknown.contract.address = addr(0x9999);
    unknown.found = false;
    bundles.push_back(unknown);
    bundles[1].label.reset();

    const auto result{featurize(bundles, dict)};
    const auto& m{result.matrix};
    CHECK(result.skipped == std::vector<Address>{addr(0x9999)});
    REQUIRE(m.rows() == 2);
    CHECK(m.cols() == 4 + 1 + 2 + 3 + transaction_columns().size() + fundflow::kCaseCount);
    CHECK(m.columns().front().name == "hasByteCode");
    CHECK(m.columns().back().name == "fundFlowCase243");
    CHECK_FALSE(m.column_index("isHoneypot").has_value());
    CHECK_FALSE(m.column_index("technique").has_value());
    CHECK(m.target(0) == 1);
    CHECK_FALSE(m.is_labeled(1));
    CHECK(value_of(m, 0, "fundFlowCase33") == doctest::Approx(1.0 / 3.0));
    CHECK(value_of(m, 0, "fundFlowCase83") == doctest::Approx(1.0 / 3.0));
    CHECK(value_of(m, 0, "fundFlowCase201") == doctest::Approx(1.0 / 3.0));
    CHECK(value_of(m, 0, "normalTransactionBlockSpan") == 30);
    CHECK(value_of(m, 0, "compilerPatchVersion1") == 1);
    CHECK(m.is_missing(0, m.column_index("internalTransactionValueMean").value()));

    const auto tx_cols{family_columns(m, FeatureSet::kTransactions)};
    CHECK(tx_cols.size() == transaction_columns().size());
    CHECK(family_columns(m, FeatureSet::kFundFlow).size() == fundflow::kCaseCount);
    CHECK(family_columns(m, FeatureSet::kAll).size() == m.cols());
}

TEST_CASE("dictionary mismatch is rejected") {
    FeatureRow row;
    row.address = kContract;
    row.source.library = {1, 0};
    CHECK_THROWS_AS(static_cast<void>(assemble_matrix(std::vector<FeatureRow>{row}, sample_dictionary())), InputError);
}

TEST_CASE("csv round trip keeps names, values, missing cells and labels") {
    const auto dict{sample_dictionary()};
    std::vector<ContractBundle> bundles{gift_bundle(1), gift_bundle(2)};
    bundles[1].label = HoneypotLabel::negative();
    const auto m{featurize(bundles, dict).matrix};

    std::stringstream ss;
    ss << "# hpscan 0.1.0 seed=7\n";
    write_csv(ss, m);
    const auto back{read_csv(ss)};
    REQUIRE(back.rows() == m.rows());
    REQUIRE(back.cols() == m.cols());
    for (std::size_t c{0}; c < m.cols(); ++c) CHECK(back.columns()[c] == m.columns()[c]);
    for (std::size_t r{0}; r < m.rows(); ++r) {
        CHECK(back.address(r) == m.address(r));
        CHECK(back.label(r) == m.label(r));
        for (std::size_t c{0}; c < m.cols(); ++c) {
            CHECK(back.is_missing(r, c) == m.is_missing(r, c));
            CHECK(back.at(r, c) == doctest::Approx(m.at(r, c)).epsilon(1e-8));
        }
    }
}

TEST_CASE("malformed feature csv") {
    std::istringstream bad_header{"address,foo,isHoneypot,technique\n"};
    CHECK_THROWS_AS(static_cast<void>(read_csv(bad_header)), DatasetError);
    std::istringstream short_row{"address,hasByteCode,isHoneypot,technique\n0x01,1\n"};
    CHECK_THROWS_AS(static_cast<void>(read_csv(short_row)), DatasetError);
}
