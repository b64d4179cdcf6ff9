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

#include <hpscan/error.hpp>
#include <hpscan/preprocess.hpp>

using namespace hpscan;
using namespace hpscan::features;

namespace {

std::vector<ColumnSpec> specs(std::initializer_list<const char*> names) {
    std::vector<ColumnSpec> out;
    for (const auto* n : names) out.push_back(column_spec(n));
    return out;
}

using Row = std::vector<std::optional<double>>;

// hasByteCode, hasSourceCode, numSourceCodeLines, internalTransactionValueMean,
// hasInternalTransactions, normalTransactionValueMean, fundFlowCase33, fundFlowCase200
FeatureMatrix sample() {
    FeatureMatrix m{specs({"hasByteCode", "hasSourceCode", "numSourceCodeLines", "internalTransactionValueMean",
                           "hasInternalTransactions", "normalTransactionValueMean", "fundFlowCase33",
                           "fundFlowCase200"})};
    m.add_row("0x01", HoneypotLabel::negative(), Row{1, 1, 10, std::nullopt, 0, 2.0, 1.0, 0.0});
    m.add_row("0x02", HoneypotLabel::negative(), Row{1, 1, 30, 4.0, 1, std::nullopt, 0.5, 0.0});
    m.add_row("0x03", std::nullopt, Row{0, 1, 99, 1.0, 1, 1.0, 0.25, 0.0});
    m.add_row("0x04", HoneypotLabel::negative(), Row{1, 0, 0, 1.0, 1, 1.0, 0.25, 0.0});
    m.add_row("0x05", std::nullopt, Row{1, 1, 50, std::nullopt, 0, 6.0, 0.0, 0.5});
    return m;
}

}  // namespace

TEST_CASE("clean drops rows, internal aggregates and fills zeros") {
    ColumnReport report;
    const auto cleaned{clean(sample(), &report)};
    CHECK(cleaned.source_rows == std::vector<std::size_t>{0, 1, 4});
    const auto& m{cleaned.matrix};
    CHECK(m.rows() == 3);
    CHECK_FALSE(m.column_index("internalTransactionValueMean").has_value());
    CHECK(m.column_index("hasInternalTransactions").has_value());
    const auto value_col{m.column_index("normalTransactionValueMean").value()};
    CHECK_FALSE(m.is_missing(1, value_col));
    CHECK(m.at(1, value_col) == 0.0);
    CHECK(report.rows_in == 5);
    CHECK(report.rows_without_bytecode == 1);
    CHECK(report.rows_without_source == 1);
    CHECK(report.dropped_internal == std::vector<std::string>{"internalTransactionValueMean"});
    CHECK(report.zero_filled_cells == 1);

    // Idempotent.
    const auto again{clean(m)};
    CHECK(again.matrix.rows() == m.rows());
    CHECK(again.matrix.cols() == m.cols());
}

TEST_CASE("fit drops dead fund-flow columns and scales unbounded ones") {
    const auto cleaned{clean(sample()).matrix};
    const std::vector<std::size_t> fit{0, 1};
    ColumnReport report;
    const auto p{Preprocessor::fit(cleaned, fit, &report)};
    CHECK(report.dead_fund_flow == std::vector<std::string>{"fundFlowCase200"});
    CHECK(report.live_fund_flow == 1);
    CHECK(report.scaled == std::vector<std::string>{"numSourceCodeLines", "normalTransactionValueMean"});

    const auto out{p.transform(cleaned)};
    CHECK_FALSE(out.column_index("fundFlowCase200").has_value());
    const auto lines{out.column_index("numSourceCodeLines").value()};
    CHECK(out.at(0, lines) == 0.0);
    CHECK(out.at(1, lines) == 1.0);
    // Fit range [10, 30]; 50 lands outside [0, 1] and is not clamped.
    CHECK(out.at(2, lines) == 2.0);
    // Flags and frequencies pass through.
    CHECK(out.at(0, out.column_index("fundFlowCase33").value()) == 1.0);

    auto restored{out};
    p.inverse(restored);
    CHECK(restored.at(2, restored.column_index("numSourceCodeLines").value()) == doctest::Approx(50.0));
    CHECK(restored.at(0, restored.column_index("normalTransactionValueMean").value()) == doctest::Approx(2.0));
}

TEST_CASE("constant columns scale to zero and are reported") {
    const auto cleaned{clean(sample()).matrix};
    const std::vector<std::size_t> fit{0};
    ColumnReport report;
    const auto p{Preprocessor::fit(cleaned, fit, &report)};
    const auto out{p.transform(cleaned)};
    CHECK(out.at(1, out.column_index("numSourceCodeLines").value()) == 0.0);
    CHECK(std::find(report.near_zero_variance.begin(), report.near_zero_variance.end(), "numSourceCodeLines") !=
          report.near_zero_variance.end());
}

TEST_CASE("fit preconditions") {
    const auto m{sample()};
    const std::vector<std::size_t> none;
    CHECK_THROWS_AS(static_cast<void>(Preprocessor::fit(clean(m).matrix, none)), InputError);
    const std::vector<std::size_t> all{0, 1};
    CHECK_THROWS_AS(static_cast<void>(Preprocessor::fit(m, all)), InputError);
}

TEST_CASE("scaler json round trip") {
    ScalerParams s;
    s.columns = {"numSourceCodeLines", "compilerRuns"};
    s.min = {10.0, 0.1};
    s.max = {30.0, 200.0 / 3.0};
    CHECK(ScalerParams::from_json(s.to_json()) == s);
    CHECK(s.scale(0, 50) == 2.0);
    CHECK(s.unscale(0, 2.0) == 50.0);
    auto bad = s.to_json();
    bad["columns"][0]["min"] = 99.0;
    CHECK_THROWS_AS(static_cast<void>(ScalerParams::from_json(bad)), ParseError);
}

TEST_CASE("preprocess maps fit rows through cleaning") {
    const std::vector<std::size_t> fit_on{0, 1, 2};  // row 2 is removed by cleaning
    const auto result{preprocess(sample(), fit_on)};
    CHECK(result.report.fit_rows == 2);
    CHECK(result.source_rows == std::vector<std::size_t>{0, 1, 4});
    CHECK(result.matrix.rows() == 3);
    const auto j = result.report.to_json();
    CHECK(j["deadFundFlowColumns"] == nlohmann::json::array({"fundFlowCase200"}));
}
