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


#include <hpscan/eval.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include <hpscan/error.hpp>
#include <hpscan/random.hpp>
#include <hpscan/version.hpp>

namespace hpscan::eval {

namespace {

    // Runs fn(0..n-1) on up to `jobs` threads; the first exception wins.
    template <typename Fn>
    void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
        const std::size_t workers{std::min<std::size_t>(std::max(1U, jobs), n)};
        if (workers <= 1) {
            for (std::size_t i{0}; i < n; ++i) fn(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex mu;
        {
            std::vector<std::jthread> pool;
            for (std::size_t w{0}; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t i{next++}; i < n; i = next++) {
                        try {
                            fn(i);
                        } catch (...) {
                            const std::lock_guard lock{mu};
                            if (!failure) failure = std::current_exception();
                        }
                    }
                });
            }
        }
        if (failure) std::rethrow_exception(failure);
    }

    std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return buf;
    }

    std::vector<std::size_t> labeled_rows(const features::FeatureMatrix& m) {
        std::vector<std::size_t> out;
        for (std::size_t r{0}; r < m.rows(); ++r) {
            if (m.is_labeled(r)) out.push_back(r);
        }
        return out;
    }

    std::vector<int> targets(const features::FeatureMatrix& m, std::span<const std::size_t> rows) {
        std::vector<int> y;
        y.reserve(rows.size());
        for (const auto r : rows) y.push_back(m.target(r));
        return y;
    }

    std::vector<std::size_t> pick(std::span<const std::size_t> from, std::span<const std::size_t> positions) {
        std::vector<std::size_t> out;
        out.reserve(positions.size());
        for (const auto p : positions) out.push_back(from[p]);
        return out;
    }

}  // namespace

std::vector<std::size_t> FoldAssignment::test_indices(std::size_t f) const {
    std::vector<std::size_t> out;
    for (std::size_t i{0}; i < fold.size(); ++i) {
        if (fold[i] == f) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> FoldAssignment::train_indices(std::size_t f) const {
    std::vector<std::size_t> out;
    for (std::size_t i{0}; i < fold.size(); ++i) {
        if (fold[i] != f) out.push_back(i);
    }
    return out;
}

FoldAssignment stratified_kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw InputError{"k must be at least 2"};
    std::vector<std::size_t> pos, neg;
    for (std::size_t i{0}; i < labels.size(); ++i) {
        if (labels[i] == 1) {
            pos.push_back(i);
        } else if (labels[i] == 0) {
            neg.push_back(i);
        } else {
            throw InputError{"labels must be 0 or 1"};
        }
    }
    if (pos.size() < k || neg.size() < k) {
        throw InputError{"stratified " + std::to_string(k) + "-fold needs at least k samples per class (positives: " +
                         std::to_string(pos.size()) + ", negatives: " + std::to_string(neg.size()) + ")"};
    }
    FoldAssignment out;
    out.k = k;
    out.seed = seed;
    out.fold.assign(labels.size(), 0);
    Rng rng{seed};
    rng.shuffle(std::span{pos});
    rng.shuffle(std::span{neg});
    std::size_t slot{0};
    for (const auto& cls : {pos, neg}) {
        for (const auto i : cls) out.fold[i] = static_cast<std::uint32_t>(slot++ % k);
    }
    return out;
}

double auroc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw InputError{"score and label counts differ"};
    std::uint64_t n_pos{0}, n_neg{0};
    for (std::size_t i{0}; i < labels.size(); ++i) {
        if (std::isnan(scores[i])) throw InputError{"NaN score"};
        if (labels[i] == 1) {
            ++n_pos;
        } else if (labels[i] == 0) {
            ++n_neg;
        } else {
            throw InputError{"labels must be 0 or 1"};
        }
    }
    if (n_pos == 0 || n_neg == 0) throw InputError{"AUROC needs both classes"};

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Twice the Mann-Whitney U, kept integral.
    std::uint64_t twice_u{0}, neg_below{0};
    for (std::size_t i{0}; i < order.size();) {
        std::size_t j{i};
        std::uint64_t p{0}, n{0};
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            labels[order[j]] == 1 ? ++p : ++n;
            ++j;
        }
        twice_u += 2 * p * neg_below + p * n;
        neg_below += n;
        i = j;
    }
    return static_cast<double>(twice_u) / (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

std::pair<double, double> mean_std(std::span<const double> values) {
    if (values.empty()) return {0.0, 0.0};
    const double anchor{values[0]};
    double shift{0};
    for (const double v : values) shift += v - anchor;
    const double n{static_cast<double>(values.size())};
    const double mean{anchor + shift / n};
    double ss{0};
    for (const double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / n)};
}

std::vector<double> FittedModel::score(const features::FeatureMatrix& cleaned) const {
    const auto transformed{preprocessor.transform(cleaned)};
    std::vector<std::size_t> cols;
    cols.reserve(columns.size());
    for (const auto& name : columns) cols.push_back(*transformed.column_index(name));
    std::vector<std::size_t> rows(transformed.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    const auto data{transformed.dense(rows, cols)};
    return gbdt::predict_proba(model, {data, rows.size(), cols.size()});
}

FittedModel fit_model(const features::FeatureMatrix& cleaned, std::span<const std::size_t> fit_rows,
                      features::FeatureSet set, const gbdt::TrainConfig& config) {
    FittedModel out;
    out.preprocessor = features::Preprocessor::fit(cleaned, fit_rows);
    const auto train{out.preprocessor.transform(cleaned.select_rows(fit_rows))};
    const auto cols{features::family_columns(train, set)};
    if (cols.empty()) {
        throw InputError{"feature set '" + std::string{features::to_string(set)} + "' has no live columns"};
    }
    for (const auto c : cols) out.columns.push_back(train.columns()[c].name);
    std::vector<std::size_t> rows(train.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    const auto data{train.dense(rows, cols)};
    const auto y{targets(train, rows)};
    out.model = gbdt::train({data, rows.size(), cols.size()}, y, config, out.columns);
    return out;
}

CvReport cross_validate(const features::FeatureMatrix& m, features::FeatureSet set, const gbdt::TrainConfig& config,
                        std::size_t k, std::uint64_t seed, unsigned jobs) {
    const auto cleaned{features::clean(m).matrix};
    const auto labeled{labeled_rows(cleaned)};
    const auto folds{stratified_kfold(targets(cleaned, labeled), k, seed)};

    CvReport report;
    report.set = set;
    report.folds.resize(k);
    parallel_for(k, jobs, [&](std::size_t f) {
        const auto train{pick(labeled, folds.train_indices(f))};
        const auto test{pick(labeled, folds.test_indices(f))};
        const auto fitted{fit_model(cleaned, train, set, config)};
        auto& r{report.folds[f]};
        r.fold = f;
        r.train_rows = train.size();
        r.test_rows = test.size();
        r.train_auroc = auroc(fitted.score(cleaned.select_rows(train)), targets(cleaned, train));
        r.test_auroc = auroc(fitted.score(cleaned.select_rows(test)), targets(cleaned, test));
    });

    std::vector<double> tr, te;
    for (const auto& r : report.folds) {
        tr.push_back(r.train_auroc);
        te.push_back(r.test_auroc);
    }
    std::tie(report.train_mean, report.train_std) = mean_std(tr);
    std::tie(report.test_mean, report.test_std) = mean_std(te);
    return report;
}

std::vector<Technique> techniques_present(const features::FeatureMatrix& m) {
    std::vector<bool> seen(kTechniqueCount, false);
    for (std::size_t r{0}; r < m.rows(); ++r) {
        const auto& l{m.label(r)};
        if (l && l->is_honeypot) seen[static_cast<std::size_t>(l->technique)] = true;
    }
    std::vector<Technique> out;
    for (std::size_t t{1}; t < kTechniqueCount; ++t) {
        if (seen[t]) out.push_back(static_cast<Technique>(t));
    }
    return out;
}

LotoResult leave_one_technique_out(const features::FeatureMatrix& m, Technique technique,
                                   const gbdt::TrainConfig& config, features::FeatureSet set, double threshold) {
    if (technique == Technique::kNone) throw InputError{"NONE is not a honeypot technique"};
    const auto cleaned{features::clean(m).matrix};
    std::vector<std::size_t> train, test;
    for (std::size_t r{0}; r < cleaned.rows(); ++r) {
        const auto& l{cleaned.label(r)};
        if (!l) continue;
        (l->is_honeypot && l->technique == technique ? test : train).push_back(r);
    }
    if (test.empty()) {
        throw InputError{"technique " + std::string{technique_token(technique)} + " has no labeled honeypots"};
    }
    const auto fitted{fit_model(cleaned, train, set, config)};
    LotoResult out;
    out.technique = technique;
    for (const double p : fitted.score(cleaned.select_rows(test))) {
        p >= threshold ? ++out.tp : ++out.fn;
    }
    out.recall = static_cast<double>(out.tp) / static_cast<double>(out.tp + out.fn);
    return out;
}

std::vector<FittedModel> train_fold_models(const features::FeatureMatrix& cleaned, const gbdt::TrainConfig& config,
                                           std::size_t k, std::uint64_t seed, features::FeatureSet set,
                                           unsigned jobs) {
    const auto labeled{labeled_rows(cleaned)};
    const auto folds{stratified_kfold(targets(cleaned, labeled), k, seed)};
    std::vector<FittedModel> models(k);
    parallel_for(k, jobs, [&](std::size_t f) {
        models[f] = fit_model(cleaned, pick(labeled, folds.train_indices(f)), set, config);
    });
    return models;
}

TriageRanking score_ensemble(const features::FeatureMatrix& cleaned, std::span<const FittedModel> models) {
    if (models.empty()) throw InputError{"ensemble has no models"};
    std::vector<std::vector<double>> scores;
    scores.reserve(models.size());
    for (const auto& model : models) scores.push_back(model.score(cleaned));

    TriageRanking out;
    out.models = models.size();
    out.entries.reserve(cleaned.rows());
    std::vector<double> column(models.size());
    for (std::size_t r{0}; r < cleaned.rows(); ++r) {
        for (std::size_t i{0}; i < models.size(); ++i) column[i] = scores[i][r];
        const auto [mean, sd] = mean_std(column);
        out.entries.push_back({cleaned.address(r), mean, sd, cleaned.label(r)});
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const TriageEntry& a, const TriageEntry& b) {
        if (a.mean_prob != b.mean_prob) return a.mean_prob > b.mean_prob;
        return a.address < b.address;
    });
    return out;
}

TriageRanking triage_rank(const features::FeatureMatrix& m, const gbdt::TrainConfig& config, std::size_t k,
                          std::uint64_t seed, features::FeatureSet set, unsigned jobs) {
    const auto cleaned{features::clean(m).matrix};
    const auto models{train_fold_models(cleaned, config, k, seed, set, jobs)};
    return score_ensemble(cleaned, models);
}

std::string metadata_line(std::uint64_t seed) {
    return "# hpscan " + std::string{kVersion} + " seed=" + std::to_string(seed);
}

void write_cv_csv(std::ostream& out, std::span<const CvReport> reports, std::uint64_t seed) {
    out << metadata_line(seed) << '\n' << "featureSet,fold,trainAuroc,testAuroc\n";
    for (const auto& rep : reports) {
        const auto set{features::to_string(rep.set)};
        for (const auto& f : rep.folds) {
            out << set << ',' << f.fold << ',' << fmt(f.train_auroc) << ',' << fmt(f.test_auroc) << '\n';
        }
        out << set << ",mean," << fmt(rep.train_mean) << ',' << fmt(rep.test_mean) << '\n';
        out << set << ",std," << fmt(rep.train_std) << ',' << fmt(rep.test_std) << '\n';
    }
}

void write_loto_csv(std::ostream& out, std::span<const LotoResult> results, std::uint64_t seed) {
    out << metadata_line(seed) << '\n' << "technique,FN,TP,recall\n";
    for (const auto& r : results) {
        out << technique_token(r.technique) << ',' << r.fn << ',' << r.tp << ',' << fmt(r.recall) << '\n';
    }
}

void write_triage_csv(std::ostream& out, const TriageRanking& ranking, std::uint64_t seed,
                      std::optional<std::size_t> top, bool unlabeled_only) {
    out << metadata_line(seed) << '\n' << "rank,address,meanProb,stdProb,isLabeled,label\n";
    std::size_t written{0}, rank{0};
    for (const auto& e : ranking.entries) {
        ++rank;
        if (unlabeled_only && e.label) continue;
        if (top && written >= *top) break;
        out << rank << ',' << e.address << ',' << fmt(e.mean_prob) << ',' << fmt(e.std_prob) << ','
            << (e.label ? 1 : 0) << ',';
        if (e.label) out << technique_token(e.label->technique);
        out << '\n';
        ++written;
    }
}

}  // namespace hpscan::eval
