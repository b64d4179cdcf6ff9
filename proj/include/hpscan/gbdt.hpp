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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hpscan::gbdt {

// Row-major view over a dense feature block.
struct MatrixView {
    std::span<const double> data;
    std::size_t rows{0};
    std::size_t cols{0};

    [[nodiscard]] double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct TrainConfig {
    int n_rounds{100};
    double learning_rate{0.1};
    int max_depth{6};
    double l2_lambda{1.0};
    double gain_gamma{0.0};
    double min_child_weight{1.0};
    // Unset: negatives / positives of the training labels.
    std::optional<double> scale_pos_weight;
    std::uint64_t seed{0};
    // Worker threads for the per-level split search. Results do not depend on it.
    unsigned threads{1};

    // Throws InputError listing every violated field.
    void validate() const;

    friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct Node {
    // -1 for leaves
    std::int32_t feature{-1};
    double threshold{0};
    std::int32_t left{-1};
    std::int32_t right{-1};
    // leaf output, already scaled by the learning rate
    double weight{0};
    // split gain for internal nodes
    double gain{0};

    [[nodiscard]] bool is_leaf() const noexcept { return feature < 0; }

    friend bool operator==(const Node&, const Node&) = default;
};

// Rows with x[feature] < threshold go left.
struct Tree {
    std::vector<Node> nodes;

    [[nodiscard]] double predict(std::span<const double> row) const;

    friend bool operator==(const Tree&, const Tree&) = default;
};

struct Model {
    std::vector<Tree> trees;
    double base_score{0};
    TrainConfig config;
    // The weight actually used (resolved default).
    double scale_pos_weight{1};
    std::size_t n_features{0};
    std::vector<std::string> feature_names;

    friend bool operator==(const Model&, const Model&) = default;
};

struct GradHess {
    double grad{0};
    double hess{0};
};

inline constexpr double kMarginClamp{30.0};

[[nodiscard]] double sigmoid(double margin) noexcept;
[[nodiscard]] GradHess logistic_grad_hess(double margin, int label, double weight) noexcept;
// Weighted log-loss of one sample; the function logistic_grad_hess differentiates.
[[nodiscard]] double logistic_loss(double margin, int label, double weight) noexcept;

[[nodiscard]] double split_gain(double grad_left, double hess_left, double grad_right, double hess_right,
                                double l2_lambda, double gain_gamma) noexcept;

// Exact greedy boosting. Throws InputError on single-class labels, labels
// outside {0,1}, non-finite features or shape errors.
[[nodiscard]] Model train(const MatrixView& x, std::span<const int> y, const TrainConfig& config,
                          std::vector<std::string> feature_names = {});

// Sum of base score and the first `n_trees` trees (all when unset).
[[nodiscard]] std::vector<double> predict_margin(const Model& model, const MatrixView& x,
                                                 std::optional<std::size_t> n_trees = std::nullopt);
[[nodiscard]] std::vector<double> predict_proba(const Model& model, const MatrixView& x);

struct ImportanceReport {
    // Share of total split gain per feature; all zero when the model never splits.
    std::vector<double> importance;
    std::vector<std::string> feature_names;
    bool has_splits{false};

    // Indices of the `k` largest shares, descending, ties by lower index.
    [[nodiscard]] std::vector<std::size_t> top(std::size_t k) const;
};

[[nodiscard]] ImportanceReport feature_importance(const Model& model);

[[nodiscard]] nlohmann::json to_json(const Model& model);
[[nodiscard]] Model from_json(const nlohmann::json& j);
void save(const Model& model, const std::filesystem::path& path);
[[nodiscard]] Model load(const std::filesystem::path& path);

}  // namespace hpscan::gbdt
