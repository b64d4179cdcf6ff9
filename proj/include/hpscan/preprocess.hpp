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

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <hpscan/features.hpp>

// Preprocessing runs in two stages.
//
// clean() is row-local and needs no fitting: drop contracts without bytecode or
// source, drop the internal-transaction aggregates (hasInternalTransactions
// stays), and zero-fill the remaining missing statistics.
//
// Preprocessor::fit() learns from a row subset only: which fund-flow columns
// are live and the min/max of every unbounded column. Cross-validation fits it
// on the training folds, so test folds never leak into scaling.
namespace hpscan::features {

struct ColumnReport {
    std::size_t rows_in{0};
    std::size_t rows_without_bytecode{0};
    std::size_t rows_without_source{0};
    std::vector<std::string> dropped_internal;
    std::size_t zero_filled_cells{0};
    std::vector<std::string> dead_fund_flow;
    std::size_t live_fund_flow{0};
    // Reported only; nothing is dropped for low variance.
    std::vector<std::string> near_zero_variance;
    std::vector<std::string> scaled;
    std::size_t fit_rows{0};

    [[nodiscard]] nlohmann::json to_json() const;
};

struct CleanResult {
    FeatureMatrix matrix;
    // Index into the input matrix for every surviving row.
    std::vector<std::size_t> source_rows;
};

// Idempotent.
[[nodiscard]] CleanResult clean(const FeatureMatrix& m, ColumnReport* report = nullptr);

inline constexpr double kNearZeroVariance{1e-8};

struct ScalerParams {
    std::vector<std::string> columns;
    std::vector<double> min;
    std::vector<double> max;

    // (x - min) / (max - min); constant columns map to 0. Values outside the
    // fitted range are not clamped.
    [[nodiscard]] double scale(std::size_t i, double x) const noexcept;
    [[nodiscard]] double unscale(std::size_t i, double y) const noexcept;

    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] static ScalerParams from_json(const nlohmann::json& j);

    friend bool operator==(const ScalerParams&, const ScalerParams&) = default;
};

class Preprocessor {
  public:
    // Throws InputError when `fit_rows` is empty or `m` still has missing cells.
    [[nodiscard]] static Preprocessor fit(const FeatureMatrix& m, std::span<const std::size_t> fit_rows,
                                          ColumnReport* report = nullptr);

    // Keeps the fitted columns (by name) and scales them.
    [[nodiscard]] FeatureMatrix transform(const FeatureMatrix& m) const;
    // Undoes the scaling in place.
    void inverse(FeatureMatrix& m) const;

    [[nodiscard]] const std::vector<std::string>& kept_columns() const noexcept { return kept_; }
    [[nodiscard]] const ScalerParams& scaler() const noexcept { return scaler_; }

  private:
    std::vector<std::string> kept_;
    ScalerParams scaler_;
};

struct PreprocessResult {
    FeatureMatrix matrix;
    Preprocessor preprocessor;
    ColumnReport report;
    std::vector<std::size_t> source_rows;
};

// clean() followed by fit on `fit_on` (indices into `m`; rows removed by
// cleaning are ignored) and transform of every surviving row.
[[nodiscard]] PreprocessResult preprocess(const FeatureMatrix& m, std::span<const std::size_t> fit_on);

}  // namespace hpscan::features
