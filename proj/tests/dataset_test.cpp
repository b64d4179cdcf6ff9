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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <hpscan/dataset.hpp>
#include <hpscan/error.hpp>
#include <hpscan/random.hpp>

#include "test_util.hpp"

using namespace hpscan;
using test::addr;

namespace {

ContractBundle random_bundle(Rng& rng, unsigned id) {
    ContractBundle b;
    b.contract.address = addr(id);
    b.contract.creator = addr(100000 + id);
    b.contract.bytecode.resize(rng.below(40));
    for (auto& x : b.contract.bytecode) x = static_cast<std::uint8_t>(rng.below(256));
    b.contract.creation_block = rng.below(10'000'000);
    b.contract.creation_tx_hash = test::txhash(id * 100);
    b.normals.push_back(test::creation(id * 100, b.contract.creator, b.contract.address, 0, b.contract.creation_block));
    const auto n{rng.below(5)};
    for (unsigned i{1}; i <= n; ++i) {
        // Values above 2^64 exercise the decimal-string path.
        Wei v{rng.next()};
        v *= Wei{rng.next()};
        auto tx{test::call(id * 100 + i, addr(200000 + i), b.contract.address, v, b.contract.creation_block + i,
                           rng.chance(0.2))};
        tx.transaction_index = rng.below(300);
        b.normals.push_back(tx);
        if (rng.chance(0.5)) b.internals.push_back(test::transfer(tx.hash, b.contract.address, tx.from, rng.below(1000)));
    }
    if (rng.chance(0.5)) {
        b.source.has_source_code = true;
        b.source.source_line_count = rng.below(1000);
        b.source.compiler_version_raw = "v0.4.24+commit.e67f0147";
        b.source.compiler_minor = "4";
        b.source.compiler_patch = "24+commit.e67f0147";
        b.source.compiler_runs = 200;
        if (rng.chance(0.5)) b.source.library = "SafeMath";
    }
    switch (rng.below(3)) {
        case 0: b.label = HoneypotLabel::negative(); break;
        case 1: b.label = HoneypotLabel::honeypot(Technique::kUninitialisedStruct); break;
        default: break;
    }
    b.found = !rng.chance(0.05);
    return b;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("hpscan_dataset_" + name);
}

}  // namespace

TEST_CASE("store then load 100 bundles round-trips every field") {
    Rng rng{11};
    std::vector<ContractBundle> bundles;
    for (unsigned i{1}; i <= 100; ++i) bundles.push_back(random_bundle(rng, i));
    const auto path{temp_file("roundtrip.jsonl")};
    dataset::store(path, bundles);
    const auto loaded{dataset::load(path)};
    REQUIRE(loaded.size() == bundles.size());
    for (std::size_t i{0}; i < bundles.size(); ++i) CHECK(loaded[i] == bundles[i]);
    std::filesystem::remove(path);
}

TEST_CASE("empty dataset is just the header") {
    const auto path{temp_file("empty.jsonl")};
    dataset::store(path, {});
    std::ifstream in{path};
    std::string line;
    std::getline(in, line);
    CHECK(line == R"({"format":"hpscan-raw","version":1})");
    CHECK(dataset::load(path).empty());
    std::filesystem::remove(path);
}

TEST_CASE("append keeps earlier records") {
    Rng rng{3};
    const auto path{temp_file("append.jsonl")};
    std::vector<ContractBundle> first{random_bundle(rng, 1)}, second{random_bundle(rng, 2), random_bundle(rng, 3)};
    dataset::store(path, first);
    dataset::store(path, second, true);
    const auto loaded{dataset::load(path)};
    REQUIRE(loaded.size() == 3);
    CHECK(loaded[0] == first[0]);
    CHECK(loaded[2] == second[1]);
    std::filesystem::remove(path);
}

TEST_CASE("truncated last line is reported with its line number") {
    Rng rng{5};
    std::stringstream ss;
    std::vector<ContractBundle> bundles{random_bundle(rng, 1), random_bundle(rng, 2)};
    dataset::write(ss, bundles);
    auto text{ss.str()};
    text.resize(text.size() - 20);
    std::istringstream in{text};
    try {
        static_cast<void>(dataset::read(in));
        FAIL("expected DatasetError");
    } catch (const DatasetError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("header problems") {
    std::istringstream wrong_version{R"({"format":"hpscan-raw","version":2})"
                                     "\n"};
    CHECK_THROWS_AS(static_cast<void>(dataset::read(wrong_version)), DatasetError);
    std::istringstream wrong_format{R"({"format":"other","version":1})"
                                    "\n"};
    CHECK_THROWS_AS(static_cast<void>(dataset::read(wrong_format)), DatasetError);
    std::istringstream empty{""};
    CHECK_THROWS_AS(static_cast<void>(dataset::read(empty)), DatasetError);
}

TEST_CASE("field errors name the field and the line") {
    Rng rng{9};
    auto j = dataset::to_json(random_bundle(rng, 1));
    j["normals"][0]["value"] = "12x";
    std::istringstream in{std::string{R"({"format":"hpscan-raw","version":1})"} + "\n" + j.dump() + "\n"};
    try {
        static_cast<void>(dataset::read(in));
        FAIL("expected DatasetError");
    } catch (const DatasetError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string{e.what()}.find("value") != std::string::npos);
    }
}
