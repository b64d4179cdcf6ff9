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

#include <hpscan/preprocess.hpp>

#include <algorithm>
#include <limits>
#include <unordered_map>

#include <hpscan/error.hpp>

namespace hpscan::features {

namespace {
    constexpr int kScalerVersion{1};
}

nlohmann::json ColumnReport::to_json() const {
    return {{"rowsIn", rows_in},
            {"rowsWithoutBytecode", rows_without_bytecode},
            {"rowsWithoutSource", rows_without_source},
            {"droppedInternalAggregates", dropped_internal},
            {"zeroFilledCells", zero_filled_cells},
            {"deadFundFlowColumns", dead_fund_flow},
            {"liveFundFlowColumns", live_fund_flow},
            {"nearZeroVariance", near_zero_variance},
            {"scaledColumns", scaled},
            {"fitRows", fit_rows},
            {"scalerFit", "training rows only"}};
}

CleanResult clean(const FeatureMatrix& m, ColumnReport* report) {
    const auto bytecode{m.column_index("hasByteCode")};
    const auto source{m.column_index("hasSourceCode")};

    CleanResult out;
    std::size_t no_bytecode{0}, no_source{0};
    for (std::size_t r{0}; r < m.rows(); ++r) {
        const bool has_bytecode{!bytecode || (!m.is_missing(r, *bytecode) && m.at(r, *bytecode) != 0.0)};
        const bool has_source{!source || (!m.is_missing(r, *source) && m.at(r, *source) != 0.0)};
        if (!has_bytecode) ++no_bytecode;
        if (!has_source) ++no_source;
        if (has_bytecode && has_source) out.source_rows.push_back(r);
    }

    std::vector<std::size_t> keep_cols;
    std::vector<std::string> dropped;
    for (std::size_t c{0}; c < m.cols(); ++c) {
        if (m.columns()[c].internal_aggregate) {
            dropped.push_back(m.columns()[c].name);
        } else {
            keep_cols.push_back(c);
        }
    }

    out.matrix = m.select_rows(out.source_rows).select_columns(keep_cols);
    std::size_t filled{0};
    for (std::size_t r{0}; r < out.matrix.rows(); ++r) {
        for (std::size_t c{0}; c < out.matrix.cols(); ++c) {
            if (out.matrix.is_missing(r, c)) {
                out.matrix.set(r, c, 0.0);
                ++filled;
            }
        }
    }

    if (report != nullptr) {
        report->rows_in = m.rows();
        report->rows_without_bytecode = no_bytecode;
        report->rows_without_source = no_source;
        report->dropped_internal = std::move(dropped);
        report->zero_filled_cells = filled;
    }
    return out;
}

double ScalerParams::scale(std::size_t i, double x) const noexcept {
    const double range{max[i] - min[i]};
    return range > 0 ? (x - min[i]) / range : 0.0;
}

double ScalerParams::unscale(std::size_t i, double y) const noexcept {
    const double range{max[i] - min[i]};
    return range > 0 ? y * range + min[i] : min[i];
}

nlohmann::json ScalerParams::to_json() const {
    nlohmann::json cols = nlohmann::json::array();
    for (std::size_t i{0}; i < columns.size(); ++i) {
        cols.push_back({{"name", columns[i]}, {"min", min[i]}, {"max", max[i]}});
    }
    return {{"format", "hpscan-scaler"}, {"version", kScalerVersion}, {"columns", std::move(cols)}};
}

ScalerParams ScalerParams::from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("format", "") != "hpscan-scaler") {
        throw ParseError{"format", "not an hpscan-scaler document"};
    }
    if (j.value("version", 0) != kScalerVersion) throw ParseError{"version", "unsupported scaler version"};
    ScalerParams s;
    try {
        for (const auto& c : j.at("columns")) {
            s.columns.push_back(c.at("name").get<std::string>());
            s.min.push_back(c.at("min").get<double>());
            s.max.push_back(c.at("max").get<double>());
            if (s.min.back() > s.max.back()) throw ParseError{"columns." + s.columns.back(), "min > max"};
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError{"columns", e.what()};
    }
    return s;
}

Preprocessor Preprocessor::fit(const FeatureMatrix& m, std::span<const std::size_t> fit_rows, ColumnReport* report) {
    if (fit_rows.empty()) throw InputError{"cannot fit preprocessing on zero rows"};
    for (std::size_t r{0}; r < m.rows(); ++r) {
        for (std::size_t c{0}; c < m.cols(); ++c) {
            if (m.is_missing(r, c)) throw InputError{"matrix has missing values; clean() it first"};
        }
    }

    Preprocessor p;
    std::vector<std::string> dead;
    std::vector<std::string> low_variance;
    std::size_t live{0};
    const auto n{static_cast<double>(fit_rows.size())};
    for (std::size_t c{0}; c < m.cols(); ++c) {
        const auto& spec{m.columns()[c]};
        double lo{std::numeric_limits<double>::infinity()};
        double hi{-std::numeric_limits<double>::infinity()};
        for (const auto r : fit_rows) {
            lo = std::min(lo, m.at(r, c));
            hi = std::max(hi, m.at(r, c));
        }
        if (spec.kind == Kind::kFrequency) {
            if (lo == 0.0 && hi == 0.0) {
                dead.push_back(spec.name);
                continue;
            }
            ++live;
        }
        p.kept_.push_back(spec.name);
        const bool scaled{spec.kind == Kind::kUnbounded};
        if (scaled) {
            p.scaler_.columns.push_back(spec.name);
            p.scaler_.min.push_back(lo);
            p.scaler_.max.push_back(hi);
        }

        const auto value = [&](std::size_t r) {
            return scaled ? p.scaler_.scale(p.scaler_.columns.size() - 1, m.at(r, c)) : m.at(r, c);
        };
        double mean{0};
        for (const auto r : fit_rows) mean += value(r);
        mean /= n;
        double var{0};
        for (const auto r : fit_rows) var += (value(r) - mean) * (value(r) - mean);
        if (var / n < kNearZeroVariance) low_variance.push_back(spec.name);
    }

    if (report != nullptr) {
        report->dead_fund_flow = std::move(dead);
        report->live_fund_flow = live;
        report->near_zero_variance = std::move(low_variance);
        report->scaled = p.scaler_.columns;
        report->fit_rows = fit_rows.size();
    }
    return p;
}

FeatureMatrix Preprocessor::transform(const FeatureMatrix& m) const {
    std::vector<std::size_t> cols;
    cols.reserve(kept_.size());
    for (const auto& name : kept_) {
        const auto idx{m.column_index(name)};
        if (!idx) throw InputError{"column '" + name + "' missing from matrix"};
        cols.push_back(*idx);
    }
    auto out{m.select_columns(cols)};
    for (std::size_t i{0}; i < scaler_.columns.size(); ++i) {
        const auto c{*out.column_index(scaler_.columns[i])};
        for (std::size_t r{0}; r < out.rows(); ++r) out.set(r, c, scaler_.scale(i, out.at(r, c)));
    }
    return out;
}

void Preprocessor::inverse(FeatureMatrix& m) const {
    for (std::size_t i{0}; i < scaler_.columns.size(); ++i) {
        const auto c{m.column_index(scaler_.columns[i])};
        if (!c) throw InputError{"column '" + scaler_.columns[i] + "' missing from matrix"};
        for (std::size_t r{0}; r < m.rows(); ++r) m.set(r, *c, scaler_.unscale(i, m.at(r, *c)));
    }
}

PreprocessResult preprocess(const FeatureMatrix& m, std::span<const std::size_t> fit_on) {
    PreprocessResult out;
    auto cleaned{clean(m, &out.report)};
    std::unordered_map<std::size_t, std::size_t> position;
    for (std::size_t i{0}; i < cleaned.source_rows.size(); ++i) position.emplace(cleaned.source_rows[i], i);
    std::vector<std::size_t> fit_rows;
    for (const auto r : fit_on) {
        if (const auto it{position.find(r)}; it != position.end()) fit_rows.push_back(it->second);
    }
    out.preprocessor = Preprocessor::fit(cleaned.matrix, fit_rows, &out.report);
    out.matrix = out.preprocessor.transform(cleaned.matrix);
    out.source_rows = std::move(cleaned.source_rows);
    return out;
}

}  // namespace hpscan::features
