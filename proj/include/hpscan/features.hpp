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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include <hpscan/fundflow.hpp>
#include <hpscan/types.hpp>

namespace hpscan::features {

enum class Family : std::uint8_t { kSource, kTransaction, kFundFlow };

enum class Kind : std::uint8_t {
    kFlag,       // 0/1
    kCategory,   // one-hot indicator
    kUnbounded,  // counts, sums, spans: min-max scaled
    kRatio,
    kFrequency,
};

struct ColumnSpec {
    std::string name;
    Family family{Family::kSource};
    Kind kind{Kind::kFlag};
    // Internal-transaction aggregates, undefined for most contracts.
    bool internal_aggregate{false};

    friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

// Recovers family and kind from a canonical column name; throws InputError for
// names this library never emits.
[[nodiscard]] ColumnSpec column_spec(std::string_view name);

enum class FeatureSet : std::uint8_t { kAll, kTransactions, kSource, kFundFlow };

[[nodiscard]] std::string_view to_string(FeatureSet set) noexcept;
// "all", "transactions", "source", "fundflow"
[[nodiscard]] std::optional<FeatureSet> parse_feature_set(std::string_view s) noexcept;
[[nodiscard]] bool in_set(Family family, FeatureSet set) noexcept;

// Ordered vocabularies for the three categoricals. Values are sorted
// lexicographically when fitted; the position is the one-hot index and the
// column suffix (compilerPatchVersion136).
struct EncodingDictionary {
    std::vector<std::string> library;
    std::vector<std::string> compiler_minor;
    std::vector<std::string> compiler_patch;

    [[nodiscard]] static EncodingDictionary fit(std::span<const SourceInfo> corpus);

    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] static EncodingDictionary from_json(const nlohmann::json& j);

    friend bool operator==(const EncodingDictionary&, const EncodingDictionary&) = default;
};

struct SourceBlock {
    bool has_byte_code{false};
    bool has_source_code{false};
    std::uint64_t num_source_code_lines{0};
    std::uint64_t compiler_runs{0};
    std::vector<std::uint8_t> library;
    std::vector<std::uint8_t> compiler_minor;
    std::vector<std::uint8_t> compiler_patch;
};

// Undefined statistics stay empty until preprocessing zero-fills them.
struct TransactionBlock {
    double normal_count{0};
    double normal_other_sender_ratio{0};
    std::optional<double> normal_value_mean, normal_value_std;
    double normal_gas_mean{0}, normal_gas_std{0};
    double normal_gas_used_mean{0}, normal_gas_used_std{0};
    double normal_block_span{0}, normal_time_span{0};
    std::optional<double> normal_block_delta_mean, normal_block_delta_std;
    std::optional<double> normal_time_delta_mean, normal_time_delta_std;
    double internal_count{0};
    std::optional<double> internal_other_sender_ratio;
    std::optional<double> internal_value_mean, internal_value_std;
    std::optional<double> internal_gas_mean, internal_gas_std;
    std::optional<double> internal_gas_used_mean, internal_gas_used_std;
    double internal_creation_count{0};
    std::optional<double> internal_to_other_ratio;
    bool has_internal_transactions{false};

    // Same order as transaction_columns().
    [[nodiscard]] std::vector<std::optional<double>> values() const;
};

[[nodiscard]] const std::vector<std::string>& transaction_columns();

struct FeatureRow {
    Address address;
    SourceBlock source;
    TransactionBlock transactions;
    fundflow::FrequencyVector fund_flow;
    std::optional<HoneypotLabel> label;
};

[[nodiscard]] SourceBlock extract_source_features(const Contract& contract, const SourceInfo& source,
                                                  const EncodingDictionary& dict);

// Value statistics in ether over error-free transactions; gas statistics over
// all. Deltas follow (blockNumber, transactionIndex) order. Population std.
[[nodiscard]] TransactionBlock extract_transaction_features(std::span<const NormalTransaction> normals,
                                                            std::span<const InternalTransaction> internals,
                                                            const Address& creator);

// Unique / total over parties other than the creator; 0 when there are none.
[[nodiscard]] double other_sender_ratio(std::span<const Address> parties, const Address& creator);

// Dense feature table. Labels and addresses ride alongside; they are never
// feature columns.
class FeatureMatrix {
  public:
    FeatureMatrix() = default;
    explicit FeatureMatrix(std::vector<ColumnSpec> columns);

    void add_row(Address address, std::optional<HoneypotLabel> label, std::span<const std::optional<double>> values);

    [[nodiscard]] std::size_t rows() const noexcept { return addresses_.size(); }
    [[nodiscard]] std::size_t cols() const noexcept { return columns_.size(); }
    [[nodiscard]] const std::vector<ColumnSpec>& columns() const noexcept { return columns_; }
    [[nodiscard]] std::optional<std::size_t> column_index(std::string_view name) const;

    [[nodiscard]] double at(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }
    [[nodiscard]] bool is_missing(std::size_t r, std::size_t c) const { return missing_[r * cols() + c] != 0; }
    void set(std::size_t r, std::size_t c, double v);

    [[nodiscard]] const Address& address(std::size_t r) const { return addresses_[r]; }
    [[nodiscard]] const std::optional<HoneypotLabel>& label(std::size_t r) const { return labels_[r]; }
    [[nodiscard]] bool is_labeled(std::size_t r) const { return labels_[r].has_value(); }
    // 1 for labelled honeypots, 0 otherwise.
    [[nodiscard]] int target(std::size_t r) const { return labels_[r] && labels_[r]->is_honeypot ? 1 : 0; }
    [[nodiscard]] std::span<const double> row(std::size_t r) const {
        return {values_.data() + r * cols(), cols()};
    }

    [[nodiscard]] FeatureMatrix select_rows(std::span<const std::size_t> rows) const;
    [[nodiscard]] FeatureMatrix select_columns(std::span<const std::size_t> cols) const;
    // Row-major copy of the selected block, for the trainer.
    [[nodiscard]] std::vector<double> dense(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

  private:
    std::vector<ColumnSpec> columns_;
    std::vector<double> values_;
    std::vector<std::uint8_t> missing_;
    std::vector<Address> addresses_;
    std::vector<std::optional<HoneypotLabel>> labels_;
};

// Column order: source block, transaction block, fundFlowCase0..243.
// Throws InputError when a row's one-hot widths disagree with `dict`.
[[nodiscard]] FeatureMatrix assemble_matrix(std::span<const FeatureRow> rows, const EncodingDictionary& dict);

struct FeaturizeResult {
    FeatureMatrix matrix;
    // Contracts without any normal transaction have no fund-flow events.
    std::vector<Address> skipped;
};

[[nodiscard]] FeaturizeResult featurize(std::span<const ContractBundle> bundles, const EncodingDictionary& dict);

[[nodiscard]] std::vector<std::size_t> family_columns(const FeatureMatrix& m, FeatureSet set);

// Header: address, feature columns, isHoneypot, technique. Floats at 9
// significant digits; missing values and unlabeled labels are empty cells.
void write_csv(std::ostream& out, const FeatureMatrix& m);
[[nodiscard]] FeatureMatrix read_csv(std::istream& in);

}  // namespace hpscan::features
