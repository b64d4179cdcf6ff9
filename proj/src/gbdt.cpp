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

#include <hpscan/gbdt.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <thread>

#include <hpscan/error.hpp>

namespace hpscan::gbdt {

namespace {

    constexpr int kModelVersion{1};

    struct Candidate {
        double gain{0};
        std::int32_t feature{-1};
        double threshold{0};
        double grad_left{0};
        double hess_left{0};
    };

    // Column-major copy with per-feature ascending order, built once per fit.
    struct SortedColumns {
        std::size_t rows{0};
        std::vector<std::vector<std::uint32_t>> order;
        std::vector<std::vector<double>> values;

        SortedColumns(const MatrixView& x) : rows{x.rows}, order(x.cols), values(x.cols) {
            for (std::size_t f{0}; f < x.cols; ++f) {
                auto& idx{order[f]};
                idx.resize(x.rows);
                std::iota(idx.begin(), idx.end(), 0U);
                std::stable_sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) { return x(a, f) < x(b, f); });
                values[f].resize(x.rows);
                for (std::size_t k{0}; k < x.rows; ++k) values[f][k] = x(idx[k], f);
            }
        }
    };

    class TreeBuilder {
      public:
        TreeBuilder(const TrainConfig& config, const MatrixView& x, const SortedColumns& sorted,
                    std::span<const double> grad, std::span<const double> hess)
            : config_{config}, x_{x}, sorted_{sorted}, grad_{grad}, hess_{hess}, position_(x.rows, 0) {}

        // Grows one tree; position() then holds each training row's leaf.
        Tree build() {
            Tree tree;
            tree.nodes.emplace_back();
            node_grad_.assign(1, std::accumulate(grad_.begin(), grad_.end(), 0.0));
            node_hess_.assign(1, std::accumulate(hess_.begin(), hess_.end(), 0.0));

            std::vector<std::int32_t> frontier{0};
            for (int depth{0}; depth < config_.max_depth && !frontier.empty(); ++depth) {
                const auto best{search(frontier, tree.nodes.size())};
                std::vector<std::int32_t> next;
                std::vector<std::int32_t> split_of(tree.nodes.size(), -1);
                for (std::size_t s{0}; s < frontier.size(); ++s) {
                    const auto& c{best[s]};
                    if (c.feature < 0) continue;
                    const auto parent{frontier[s]};
                    const auto left{static_cast<std::int32_t>(tree.nodes.size())};
                    tree.nodes.emplace_back();
                    tree.nodes.emplace_back();
                    auto& node{tree.nodes[static_cast<std::size_t>(parent)]};
                    node.feature = c.feature;
                    node.threshold = c.threshold;
                    node.left = left;
                    node.right = left + 1;
                    node.gain = c.gain;
                    const double g{node_grad_[static_cast<std::size_t>(parent)]};
                    const double h{node_hess_[static_cast<std::size_t>(parent)]};
                    node_grad_.push_back(c.grad_left);
                    node_hess_.push_back(c.hess_left);
                    node_grad_.push_back(g - c.grad_left);
                    node_hess_.push_back(h - c.hess_left);
                    split_of[static_cast<std::size_t>(parent)] = parent;
                    next.push_back(left);
                    next.push_back(left + 1);
                }
                if (next.empty()) break;
                for (std::size_t i{0}; i < position_.size(); ++i) {
                    const auto p{static_cast<std::size_t>(position_[i])};
                    if (p >= split_of.size() || split_of[p] < 0) continue;
                    const auto& node{tree.nodes[p]};
                    position_[i] = x_(i, static_cast<std::size_t>(node.feature)) < node.threshold ? node.left : node.right;
                }
                frontier = std::move(next);
            }

            for (std::size_t n{0}; n < tree.nodes.size(); ++n) {
                auto& node{tree.nodes[n]};
                if (node.is_leaf()) {
                    node.weight = -node_grad_[n] / (node_hess_[n] + config_.l2_lambda) * config_.learning_rate;
                }
            }
            return tree;
        }

        [[nodiscard]] const std::vector<std::int32_t>& position() const noexcept { return position_; }

      private:
        std::vector<Candidate> search(const std::vector<std::int32_t>& frontier, std::size_t n_nodes) const {
            std::vector<std::int32_t> slot_of(n_nodes, -1);
            for (std::size_t s{0}; s < frontier.size(); ++s) slot_of[static_cast<std::size_t>(frontier[s])] = static_cast<std::int32_t>(s);

            const std::size_t n_features{x_.cols};
            const std::size_t n_threads{std::clamp<std::size_t>(config_.threads, 1, std::max<std::size_t>(1, n_features))};
            std::vector<std::vector<Candidate>> per_thread(n_threads, std::vector<Candidate>(frontier.size()));
            const auto work = [&](std::size_t t) {
                const std::size_t begin{n_features * t / n_threads};
                const std::size_t end{n_features * (t + 1) / n_threads};
                for (std::size_t f{begin}; f < end; ++f) scan_feature(f, frontier, slot_of, per_thread[t]);
            };
            if (n_threads == 1) {
                work(0);
            } else {
                std::vector<std::jthread> pool;
                for (std::size_t t{0}; t < n_threads; ++t) pool.emplace_back(work, t);
            }

            // Thread ranges ascend by feature, so a strict comparison keeps the
            // lowest feature index among equal gains.
            auto best{std::move(per_thread[0])};
            for (std::size_t t{1}; t < n_threads; ++t) {
                for (std::size_t s{0}; s < best.size(); ++s) {
                    if (per_thread[t][s].gain > best[s].gain) best[s] = per_thread[t][s];
                }
            }
            return best;
        }

        void scan_feature(std::size_t f, const std::vector<std::int32_t>& frontier,
                          const std::vector<std::int32_t>& slot_of, std::vector<Candidate>& best) const {
            struct Running {
                double grad{0};
                double hess{0};
                double last{0};
                bool seen{false};
            };
            std::vector<Running> acc(frontier.size());
            const auto& order{sorted_.order[f]};
            const auto& values{sorted_.values[f]};
            for (std::size_t k{0}; k < order.size(); ++k) {
                const auto row{order[k]};
                const auto s{slot_of[static_cast<std::size_t>(position_[row])]};
                if (s < 0) continue;
                auto& a{acc[static_cast<std::size_t>(s)]};
                const double v{values[k]};
                if (a.seen && v > a.last) {
                    const auto node{static_cast<std::size_t>(frontier[static_cast<std::size_t>(s)])};
                    const double grad_right{node_grad_[node] - a.grad};
                    const double hess_right{node_hess_[node] - a.hess};
                    if (a.hess >= config_.min_child_weight && hess_right >= config_.min_child_weight) {
                        const double gain{split_gain(a.grad, a.hess, grad_right, hess_right, config_.l2_lambda,
                                                     config_.gain_gamma)};
                        auto& b{best[static_cast<std::size_t>(s)]};
                        if (gain > b.gain) {
                            double threshold{0.5 * (a.last + v)};
                            if (!(threshold > a.last)) threshold = v;
                            b = {gain, static_cast<std::int32_t>(f), threshold, a.grad, a.hess};
                        }
                    }
                }
                a.grad += grad_[row];
                a.hess += hess_[row];
                a.last = v;
                a.seen = true;
            }
        }

        const TrainConfig& config_;
        const MatrixView& x_;
        const SortedColumns& sorted_;
        std::span<const double> grad_;
        std::span<const double> hess_;
        std::vector<std::int32_t> position_;
        std::vector<double> node_grad_;
        std::vector<double> node_hess_;
    };

    nlohmann::json config_to_json(const TrainConfig& c) {
        return {{"nRounds", c.n_rounds},
                {"learningRate", c.learning_rate},
                {"maxDepth", c.max_depth},
                {"l2Lambda", c.l2_lambda},
                {"gainGamma", c.gain_gamma},
                {"minChildWeight", c.min_child_weight},
                {"scalePosWeight", c.scale_pos_weight ? nlohmann::json(*c.scale_pos_weight) : nlohmann::json(nullptr)},
                {"seed", c.seed},
                {"threads", c.threads}};
    }

    TrainConfig config_from_json(const nlohmann::json& j) {
        TrainConfig c;
        c.n_rounds = j.at("nRounds").get<int>();
        c.learning_rate = j.at("learningRate").get<double>();
        c.max_depth = j.at("maxDepth").get<int>();
        c.l2_lambda = j.at("l2Lambda").get<double>();
        c.gain_gamma = j.at("gainGamma").get<double>();
        c.min_child_weight = j.at("minChildWeight").get<double>();
        if (!j.at("scalePosWeight").is_null()) c.scale_pos_weight = j.at("scalePosWeight").get<double>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.threads = j.at("threads").get<unsigned>();
        return c;
    }

}  // namespace

void TrainConfig::validate() const {
    std::vector<std::string> bad;
    if (n_rounds < 0) bad.emplace_back("nRounds must be >= 0");
    if (!(learning_rate > 0) || !std::isfinite(learning_rate)) bad.emplace_back("learningRate must be > 0");
    if (max_depth < 0) bad.emplace_back("maxDepth must be >= 0");
    if (!(l2_lambda >= 0)) bad.emplace_back("l2Lambda must be >= 0");
    if (!(gain_gamma >= 0)) bad.emplace_back("gainGamma must be >= 0");
    if (!(min_child_weight >= 0)) bad.emplace_back("minChildWeight must be >= 0");
    if (scale_pos_weight && !(*scale_pos_weight > 0)) bad.emplace_back("scalePosWeight must be > 0");
    if (threads == 0) bad.emplace_back("threads must be >= 1");
    if (bad.empty()) return;
    std::string msg{"invalid training config:"};
    for (const auto& b : bad) msg += " " + b + ";";
    throw InputError{msg};
}

double sigmoid(double margin) noexcept {
    const double m{std::clamp(margin, -kMarginClamp, kMarginClamp)};
    return 1.0 / (1.0 + std::exp(-m));
}

GradHess logistic_grad_hess(double margin, int label, double weight) noexcept {
    const double p{sigmoid(margin)};
    return {weight * (p - static_cast<double>(label)), weight * p * (1.0 - p)};
}

double logistic_loss(double margin, int label, double weight) noexcept {
    // log(1 + e^m) - y*m, written to avoid overflow
    const double m{std::clamp(margin, -kMarginClamp, kMarginClamp)};
    const double softplus{m > 0 ? m + std::log1p(std::exp(-m)) : std::log1p(std::exp(m))};
    return weight * (softplus - static_cast<double>(label) * m);
}

double split_gain(double grad_left, double hess_left, double grad_right, double hess_right, double l2_lambda,
                  double gain_gamma) noexcept {
    const double g{grad_left + grad_right};
    const double h{hess_left + hess_right};
    return 0.5 * (grad_left * grad_left / (hess_left + l2_lambda) + grad_right * grad_right / (hess_right + l2_lambda) -
                  g * g / (h + l2_lambda)) -
           gain_gamma;
}

double Tree::predict(std::span<const double> row) const {
    std::size_t n{0};
    while (!nodes[n].is_leaf()) {
        const auto& node{nodes[n]};
        n = static_cast<std::size_t>(row[static_cast<std::size_t>(node.feature)] < node.threshold ? node.left : node.right);
    }
    return nodes[n].weight;
}

Model train(const MatrixView& x, std::span<const int> y, const TrainConfig& config, std::vector<std::string> feature_names) {
    config.validate();
    if (x.data.size() != x.rows * x.cols) throw InputError{"matrix data does not match its shape"};
    if (y.size() != x.rows) throw InputError{"label count does not match row count"};
    if (!feature_names.empty() && feature_names.size() != x.cols) throw InputError{"feature name count mismatch"};
    if (x.rows >= std::numeric_limits<std::uint32_t>::max()) throw InputError{"too many rows"};
    for (const double v : x.data) {
        if (!std::isfinite(v)) throw InputError{"non-finite feature value"};
    }
    std::size_t positives{0};
    for (const int label : y) {
        if (label != 0 && label != 1) throw InputError{"labels must be 0 or 1"};
        positives += static_cast<std::size_t>(label);
    }
    if (positives == 0 || positives == y.size()) throw InputError{"training labels contain a single class"};

    Model model;
    model.config = config;
    model.n_features = x.cols;
    model.feature_names = std::move(feature_names);
    model.scale_pos_weight = config.scale_pos_weight.value_or(static_cast<double>(y.size() - positives) /
                                                              static_cast<double>(positives));

    std::vector<double> weight(x.rows);
    double w_total{0}, w_pos{0};
    for (std::size_t i{0}; i < x.rows; ++i) {
        weight[i] = y[i] == 1 ? model.scale_pos_weight : 1.0;
        w_total += weight[i];
        if (y[i] == 1) w_pos += weight[i];
    }
    // The default weight balances the classes exactly, so the prior is 1/2.
    if (config.scale_pos_weight) {
        const double prior{w_pos / w_total};
        model.base_score = std::log(prior / (1.0 - prior));
    }

    const SortedColumns sorted{x};
    std::vector<double> margin(x.rows, model.base_score);
    std::vector<double> grad(x.rows), hess(x.rows);
    for (int round{0}; round < config.n_rounds; ++round) {
        for (std::size_t i{0}; i < x.rows; ++i) {
            const auto gh{logistic_grad_hess(margin[i], y[i], weight[i])};
            grad[i] = gh.grad;
            hess[i] = gh.hess;
        }
        TreeBuilder builder{config, x, sorted, grad, hess};
        auto tree{builder.build()};
        const auto& leaf{builder.position()};
        for (std::size_t i{0}; i < x.rows; ++i) margin[i] += tree.nodes[static_cast<std::size_t>(leaf[i])].weight;
        model.trees.push_back(std::move(tree));
    }
    return model;
}

std::vector<double> predict_margin(const Model& model, const MatrixView& x, std::optional<std::size_t> n_trees) {
    if (x.cols != model.n_features) {
        throw InputError{"model expects " + std::to_string(model.n_features) + " features, got " + std::to_string(x.cols)};
    }
    const std::size_t limit{std::min(n_trees.value_or(model.trees.size()), model.trees.size())};
    std::vector<double> out(x.rows, model.base_score);
    for (std::size_t r{0}; r < x.rows; ++r) {
        const auto row{x.data.subspan(r * x.cols, x.cols)};
        for (std::size_t t{0}; t < limit; ++t) out[r] += model.trees[t].predict(row);
    }
    return out;
}

std::vector<double> predict_proba(const Model& model, const MatrixView& x) {
    auto out{predict_margin(model, x)};
    for (auto& m : out) m = sigmoid(m);
    return out;
}

std::vector<std::size_t> ImportanceReport::top(std::size_t k) const {
    std::vector<std::size_t> idx(importance.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return importance[a] > importance[b]; });
    idx.resize(std::min(k, idx.size()));
    return idx;
}

ImportanceReport feature_importance(const Model& model) {
    ImportanceReport report;
    report.importance.assign(model.n_features, 0.0);
    report.feature_names = model.feature_names;
    double total{0};
    for (const auto& tree : model.trees) {
        for (const auto& node : tree.nodes) {
            if (node.is_leaf()) continue;
            report.importance[static_cast<std::size_t>(node.feature)] += node.gain;
            total += node.gain;
        }
    }
    if (total > 0) {
        report.has_splits = true;
        for (auto& v : report.importance) v /= total;
    }
    return report;
}

nlohmann::json to_json(const Model& model) {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& tree : model.trees) {
        nlohmann::json feature = nlohmann::json::array(), threshold = nlohmann::json::array(),
                       left = nlohmann::json::array(), right = nlohmann::json::array(),
                       weight = nlohmann::json::array(), gain = nlohmann::json::array();
        for (const auto& n : tree.nodes) {
            feature.push_back(n.feature);
            threshold.push_back(n.threshold);
            left.push_back(n.left);
            right.push_back(n.right);
            weight.push_back(n.weight);
            gain.push_back(n.gain);
        }
        trees.push_back({{"feature", std::move(feature)},
                         {"threshold", std::move(threshold)},
                         {"left", std::move(left)},
                         {"right", std::move(right)},
                         {"weight", std::move(weight)},
                         {"gain", std::move(gain)}});
    }
    return {{"format", "hpscan-gbdt"},
            {"version", kModelVersion},
            {"config", config_to_json(model.config)},
            {"baseScore", model.base_score},
            {"scalePosWeight", model.scale_pos_weight},
            {"nFeatures", model.n_features},
            {"featureNames", model.feature_names},
            {"trees", std::move(trees)}};
}

Model from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("format", "") != "hpscan-gbdt") throw ParseError{"format", "not an hpscan-gbdt model"};
    if (j.value("version", 0) != kModelVersion) throw ParseError{"version", "unsupported model version"};
    Model model;
    try {
        model.config = config_from_json(j.at("config"));
        model.base_score = j.at("baseScore").get<double>();
        model.scale_pos_weight = j.at("scalePosWeight").get<double>();
        model.n_features = j.at("nFeatures").get<std::size_t>();
        model.feature_names = j.at("featureNames").get<std::vector<std::string>>();
        for (const auto& t : j.at("trees")) {
            const auto feature{t.at("feature").get<std::vector<std::int32_t>>()};
            const auto threshold{t.at("threshold").get<std::vector<double>>()};
            const auto left{t.at("left").get<std::vector<std::int32_t>>()};
            const auto right{t.at("right").get<std::vector<std::int32_t>>()};
            const auto weight{t.at("weight").get<std::vector<double>>()};
            const auto gain{t.at("gain").get<std::vector<double>>()};
            const auto n{feature.size()};
            if (threshold.size() != n || left.size() != n || right.size() != n || weight.size() != n || gain.size() != n) {
                throw ParseError{"trees", "ragged node arrays"};
            }
            Tree tree;
            for (std::size_t i{0}; i < n; ++i) {
                Node node{feature[i], threshold[i], left[i], right[i], weight[i], gain[i]};
                if (!node.is_leaf()) {
                    const auto ok_child = [&](std::int32_t c) { return c > static_cast<std::int32_t>(i) && static_cast<std::size_t>(c) < n; };
                    if (static_cast<std::size_t>(node.feature) >= model.n_features || !ok_child(node.left) || !ok_child(node.right)) {
                        throw ParseError{"trees", "node references an invalid feature or child"};
                    }
                }
                if (!std::isfinite(node.weight)) throw ParseError{"trees", "non-finite leaf weight"};
                tree.nodes.push_back(node);
            }
            if (tree.nodes.empty()) throw ParseError{"trees", "empty tree"};
            model.trees.push_back(std::move(tree));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError{"model", e.what()};
    }
    return model;
}

void save(const Model& model, const std::filesystem::path& path) {
    std::ofstream out{path};
    if (!out) throw InputError{"cannot write model to " + path.string()};
    out << to_json(model).dump() << '\n';
}

Model load(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw InputError{"cannot read model " + path.string()};
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError{path.string(), e.what()};
    }
    return from_json(j);
}

}  // namespace hpscan::gbdt
