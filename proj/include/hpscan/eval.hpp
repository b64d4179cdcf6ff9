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
#include <vector>

#include <hpscan/features.hpp>
#include <hpscan/gbdt.hpp>
#include <hpscan/preprocess.hpp>

namespace hpscan::eval {

struct FoldAssignment {
    std::vector<std::uint32_t> fold;
    std::size_t k{0};
    std::uint64_t seed{0};

    [[nodiscard]] std::vector<std::size_t> test_indices(std::size_t f) const;
    [[nodiscard]] std::vector<std::size_t> train_indices(std::size_t f) const;
};

// Each class is shuffled by `seed` and dealt round-robin, the negatives
// continuing where the positives stopped. Throws InputError when k < 2 or a
// class has fewer than k samples.
[[nodiscard]] FoldAssignment stratified_kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed);

// Normalized Mann-Whitney statistic, ties credited 1/2. Throws InputError on
// single-class input or a size mismatch.
[[nodiscard]] double auroc(std::span<const double> scores, std::span<const int> labels);

struct FoldResult {
    std::size_t fold{0};
    double train_auroc{0};
    double test_auroc{0};
    std::size_t train_rows{0};
    std::size_t test_rows{0};
};

struct CvReport {
    features::FeatureSet set{features::FeatureSet::kAll};
    std::vector<FoldResult> folds;
    double train_mean{0}, train_std{0};
    double test_mean{0}, test_std{0};
};

// Cleans `m`, restricts to labeled rows, then per fold fits the preprocessor
// and the model on the training folds only.
[[nodiscard]] CvReport cross_validate(const features::FeatureMatrix& m, features::FeatureSet set,
                                      const gbdt::TrainConfig& config, std::size_t k, std::uint64_t seed,
                                      unsigned jobs = 1);

struct LotoResult {
    Technique technique{Technique::kNone};
    std::size_t fn{0};
    std::size_t tp{0};
    double recall{0};
};

// Trains on every labeled row except the honeypots of `technique` and tests on
// exactly those. A probability >= threshold counts as detected.
[[nodiscard]] LotoResult leave_one_technique_out(const features::FeatureMatrix& m, Technique technique,
                                                 const gbdt::TrainConfig& config,
                                                 features::FeatureSet set = features::FeatureSet::kAll,
                                                 double threshold = 0.5);

// Honeypot techniques present among the labeled rows, in enum order.
[[nodiscard]] std::vector<Technique> techniques_present(const features::FeatureMatrix& m);

// A trained model together with the column selection and scaling it expects.
struct FittedModel {
    features::Preprocessor preprocessor;
    std::vector<std::string> columns;
    gbdt::Model model;

    // Probabilities for every row of a cleaned matrix.
    [[nodiscard]] std::vector<double> score(const features::FeatureMatrix& cleaned) const;
};

// Preprocessor and model fitted on `fit_rows` of a cleaned matrix.
[[nodiscard]] FittedModel fit_model(const features::FeatureMatrix& cleaned, std::span<const std::size_t> fit_rows,
                                    features::FeatureSet set, const gbdt::TrainConfig& config);

struct TriageEntry {
    Address address;
    double mean_prob{0};
    double std_prob{0};
    std::optional<HoneypotLabel> label;
};

// Sorted by mean probability descending, ties by address.
struct TriageRanking {
    std::vector<TriageEntry> entries;
    std::size_t models{0};
};

// k fold-complement models over the labeled rows of the cleaned matrix.
[[nodiscard]] std::vector<FittedModel> train_fold_models(const features::FeatureMatrix& cleaned,
                                                         const gbdt::TrainConfig& config, std::size_t k,
                                                         std::uint64_t seed, features::FeatureSet set,
                                                         unsigned jobs = 1);

// Every model scores every row; population std across models.
[[nodiscard]] TriageRanking score_ensemble(const features::FeatureMatrix& cleaned,
                                           std::span<const FittedModel> models);

// clean() + train_fold_models() + score_ensemble().
[[nodiscard]] TriageRanking triage_rank(const features::FeatureMatrix& m, const gbdt::TrainConfig& config,
                                        std::size_t k, std::uint64_t seed,
                                        features::FeatureSet set = features::FeatureSet::kAll, unsigned jobs = 1);

// Population mean and std of one contract's scores; identical inputs give std 0.
[[nodiscard]] std::pair<double, double> mean_std(std::span<const double> values);

// "# hpscan <version> seed=<seed>"
[[nodiscard]] std::string metadata_line(std::uint64_t seed);

void write_cv_csv(std::ostream& out, std::span<const CvReport> reports, std::uint64_t seed);
void write_loto_csv(std::ostream& out, std::span<const LotoResult> results, std::uint64_t seed);
// `top` limits the rows written (all when unset); `unlabeled_only` filters first.
void write_triage_csv(std::ostream& out, const TriageRanking& ranking, std::uint64_t seed,
                      std::optional<std::size_t> top = std::nullopt, bool unlabeled_only = false);

}  // namespace hpscan::eval
