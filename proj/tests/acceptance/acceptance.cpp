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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <hpscan/chain_data.hpp>
#include <hpscan/dataset.hpp>
#include <hpscan/eval.hpp>
#include <hpscan/features.hpp>
#include <hpscan/fundflow.hpp>
#include <hpscan/gbdt.hpp>
#include <hpscan/preprocess.hpp>
#include <hpscan/random.hpp>
#include <hpscan/synth.hpp>

using namespace hpscan;
using fundflow::Balance;
using fundflow::FundFlowCase;
using fundflow::Sender;

namespace {

struct Outcome {
    bool pass{true};
    std::string detail;
};

// Collects the first few failure messages of one criterion.
class Checker {
  public:
    void expect(bool ok, const std::string& what) {
        if (ok) return;
        if (failures_++ < 5) messages_ += (messages_.empty() ? "" : "; ") + what;
    }
    [[nodiscard]] bool ok() const { return failures_ == 0; }
    [[nodiscard]] Outcome outcome(std::string summary) const {
        if (ok()) return {true, std::move(summary)};
        return {false, std::to_string(failures_) + " failure(s): " + messages_};
    }

  private:
    std::size_t failures_{0};
    std::string messages_;
};

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::string hex_address(std::uint64_t n) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "0x%040llx", static_cast<unsigned long long>(n));
    return buf;
}

std::string hex_hash(std::uint64_t n) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "0x%064llx", static_cast<unsigned long long>(n));
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Case enumeration

Outcome case_enumeration() {
    Checker c;
    const auto cases{fundflow::enumerate_valid_cases()};
    c.expect(cases.size() == 244, "expected 244 cases, got " + std::to_string(cases.size()));

    // Independent brute force over the raw mixed-radix space.
    std::vector<FundFlowCase> brute;
    std::size_t raw{0};
    const Balance dirs[]{Balance::kUp, Balance::kUnchanged, Balance::kDown};
    for (const auto s : {Sender::kCreator, Sender::kOther})
        for (const bool creation : {true, false})
            for (const bool error : {true, false})
                for (const auto bc : dirs)
                    for (const auto bk : dirs)
                        for (const auto bs : dirs)
                            for (const bool op : {true, false})
                                for (const bool on : {true, false}) {
                                    ++raw;
                                    if (s == Sender::kCreator && bs != Balance::kUp) continue;
                                    const Balance sender_balance{s == Sender::kCreator ? Balance::kNotApplicable : bs};
                                    if (creation && s != Sender::kCreator) continue;
                                    const bool up{bc == Balance::kUp || bk == Balance::kUp || sender_balance == Balance::kUp || op};
                                    const bool down{bc == Balance::kDown || bk == Balance::kDown ||
                                                    sender_balance == Balance::kDown || on};
                                    if (up != down) continue;
                                    brute.push_back({s, creation, error, bc, bk, sender_balance, op, on});
                                }
    c.expect(raw == 864, "raw space is " + std::to_string(raw));
    c.expect(brute.size() == cases.size(), "brute force found " + std::to_string(brute.size()));
    for (std::size_t i{0}; i < std::min(brute.size(), cases.size()); ++i) {
        c.expect(cases[i].first.value == i && cases[i].second == brute[i], "case " + std::to_string(i) + " differs");
        c.expect(fundflow::encode(cases[i].second) == cases[i].first, "encode/decode mismatch at " + std::to_string(i));
    }

    const std::map<int, std::string> anchors{
        {33, "sender=creator, creation=True"},
        {73, "sender=creator, balanceCreator=positive, balanceContract=negative"},
        {77, "sender=creator"},
        {83, "sender=creator, balanceCreator=negative, balanceContract=positive"},
        {127, "sender=other, error=True"},
        {201, "sender=other, balanceContract=positive, balanceSender=negative"},
        {205, "sender=other"},
        {207, "sender=other, balanceSender=negative, balanceOtherPositive=True"},
    };
    for (const auto& [id, text] : anchors) {
        const auto got{fundflow::describe(fundflow::decode(fundflow::CaseId{static_cast<std::uint8_t>(id)}))};
        c.expect(got == text, "id " + std::to_string(id) + " decodes to '" + got + "'");
    }
    return c.outcome("244 of 864 raw tuples, 8 anchors match");
}

// ---------------------------------------------------------------------------
// 2. Classifier totality

Wei random_value(Rng& rng) {
    switch (rng.below(4)) {
        case 0: return 0;
        case 1: return Wei{rng.range(1, 1000)};
        case 2: return Wei{rng.next()} * Wei{1'000'000'000ULL};
        default: return Wei{1} << static_cast<unsigned>(rng.range(60, 200));
    }
}

Outcome classifier_totality() {
    Checker c;
    Rng rng{20260101};
    const Address creator{hex_address(1)};
    const Address contract{hex_address(2)};
    std::size_t created{0};
    for (int trial{0}; trial < 10'000; ++trial) {
        std::vector<Address> pool{creator, contract};
        const auto others{rng.range(0, 4)};
        for (std::int64_t i{0}; i < others; ++i) pool.push_back(hex_address(100 + rng.below(6)));

        NormalTransaction tx;
        tx.hash = hex_hash(static_cast<std::uint64_t>(trial) + 1);
        tx.block_number = 1;
        if (rng.chance(0.1)) {
            tx.from = creator;
            tx.contract_address = contract;
        } else {
            tx.from = pool[rng.below(pool.size())];
            tx.to = rng.chance(0.85) ? contract : pool[rng.below(pool.size())];
        }
        tx.value = random_value(rng);
        tx.is_error = rng.chance(0.15);

        std::vector<InternalTransaction> internals;
        const auto n_internal{rng.range(0, 5)};
        for (std::int64_t i{0}; i < n_internal; ++i) {
            InternalTransaction itx;
            itx.parent_hash = tx.hash;
            itx.from = rng.chance(0.7) ? contract : pool[rng.below(pool.size())];
            if (rng.chance(0.1)) {
                itx.contract_address = hex_address(10'000 + created++);
            } else {
                itx.to = pool[rng.below(pool.size())];
            }
            itx.value = random_value(rng);
            itx.is_error = rng.chance(0.1);
            internals.push_back(itx);
        }

        // Independent oracle: per-account deltas and the tuple they imply.
        std::map<Address, WeiDelta> delta;
        bool error{tx.is_error};
        const auto move = [&](const Address& from, const Address& to, const Wei& v) {
            delta[from] -= WeiDelta{v};
            delta[to] += WeiDelta{v};
        };
        if (!tx.is_error) move(tx.from, tx.to.empty() ? tx.contract_address : tx.to, tx.value);
        for (const auto& itx : internals) {
            if (itx.is_error) {
                error = true;
            } else {
                move(itx.from, itx.to.empty() ? itx.contract_address : itx.to, itx.value);
            }
        }
        WeiDelta sum{0};
        bool has_up{false}, has_down{false};
        for (const auto& [a, d] : delta) {
            sum += d;
            has_up = has_up || d > 0;
            has_down = has_down || d < 0;
        }
        const auto sign = [&](const Address& a) {
            const auto it{delta.find(a)};
            if (it == delta.end() || it->second == 0) return Balance::kUnchanged;
            return it->second > 0 ? Balance::kUp : Balance::kDown;
        };
        FundFlowCase expected;
        expected.sender = tx.from == creator ? Sender::kCreator : Sender::kOther;
        expected.creation = !tx.contract_address.empty() && tx.to.empty();
        expected.error = error;
        expected.balance_creator = sign(creator);
        expected.balance_contract = sign(contract);
        expected.balance_sender = expected.sender == Sender::kCreator ? Balance::kNotApplicable : sign(tx.from);
        for (const auto& [a, d] : delta) {
            if (a == creator || a == contract || a == tx.from) continue;
            expected.other_positive = expected.other_positive || d > 0;
            expected.other_negative = expected.other_negative || d < 0;
        }

        try {
            const auto id{fundflow::classify_event(tx, internals, creator, contract)};
            c.expect(id.value < fundflow::kCaseCount, "id out of range");
            c.expect(fundflow::decode(id) == expected, "trial " + std::to_string(trial) + " classified as " +
                                                           std::to_string(id.value));
        } catch (const std::exception& e) {
            c.expect(false, "trial " + std::to_string(trial) + " threw: " + e.what());
        }
        c.expect(sum == 0, "delta sum not zero");
        c.expect(has_up == has_down, "hasUp != hasDown");
    }
    return c.outcome("10000 random events classified, oracle tuples match");
}

// ---------------------------------------------------------------------------
// 3. AUROC oracle

Outcome auroc_oracle() {
    Checker c;
    Rng rng{3};
    double worst{0};
    for (int trial{0}; trial < 1000; ++trial) {
        const auto n{static_cast<std::size_t>(rng.range(2, 200))};
        const auto levels{rng.range(2, 30)};
        std::vector<double> scores(n);
        std::vector<int> labels(n);
        const double p{rng.uniform(0.05, 0.95)};
        for (std::size_t i{0}; i < n; ++i) {
            scores[i] = static_cast<double>(rng.range(0, levels)) / static_cast<double>(levels);
            labels[i] = rng.chance(p) ? 1 : 0;
        }
        labels[rng.below(n)] = 1;
        std::size_t neg{rng.below(n)};
        while (labels[neg] == 1 && std::count(labels.begin(), labels.end(), 1) == 1) neg = rng.below(n);
        labels[neg] = 0;
        if (std::count(labels.begin(), labels.end(), 1) == 0) labels[(neg + 1) % n] = 1;

        double credit{0}, pairs{0};
        for (std::size_t i{0}; i < n; ++i) {
            if (labels[i] != 1) continue;
            for (std::size_t j{0}; j < n; ++j) {
                if (labels[j] != 0) continue;
                pairs += 1;
                credit += scores[i] > scores[j] ? 1.0 : scores[i] == scores[j] ? 0.5 : 0.0;
            }
        }
        const double diff{std::abs(eval::auroc(scores, labels) - credit / pairs)};
        worst = std::max(worst, diff);
        c.expect(diff <= 1e-12, "trial " + std::to_string(trial) + " differs by " + fmt("%g", diff));
    }
    return c.outcome("1000 tied score sets, max |diff| " + fmt("%.3g", worst));
}

// ---------------------------------------------------------------------------
// 4. GBDT numerics

struct Data {
    std::vector<double> x;
    std::vector<int> y;
    std::size_t cols{0};
    [[nodiscard]] gbdt::MatrixView view() const { return {x, y.size(), cols}; }
};

Data planted_data(std::uint64_t seed, std::size_t rows, std::size_t cols, double positive_rate, double noise) {
    Rng rng{seed};
    Data d;
    d.cols = cols;
    for (std::size_t r{0}; r < rows; ++r) {
        const int label{rng.chance(positive_rate) ? 1 : 0};
        for (std::size_t c{0}; c < cols; ++c) {
            d.x.push_back(c % 3 == 0 ? label + rng.normal(0, noise) : rng.normal(0, 1));
        }
        d.y.push_back(label);
    }
    return d;
}

Data linear_data(std::uint64_t seed) {
    Rng rng{seed};
    Data d;
    d.cols = 4;
    for (int r{0}; r < 300; ++r) {
        double score{0};
        for (int c{0}; c < 4; ++c) {
            const double v{rng.uniform(-1, 1)};
            d.x.push_back(v);
            score += (c + 1) * v;
        }
        d.y.push_back(score + rng.normal(0, 1.0) > 0 ? 1 : 0);
    }
    return d;
}

Data xor_data() {
    Data d;
    d.cols = 2;
    const int counts[2][2]{{12, 9}, {11, 8}};
    for (int a{0}; a < 2; ++a) {
        for (int b{0}; b < 2; ++b) {
            for (int i{0}; i < counts[a][b]; ++i) {
                d.x.push_back(a + i * 0.01);
                d.x.push_back(b - i * 0.01);
                d.y.push_back(a ^ b);
            }
        }
    }
    return d;
}

double weighted_loss(const gbdt::Model& m, const Data& d, std::size_t trees) {
    const auto margin{gbdt::predict_margin(m, d.view(), trees)};
    double loss{0};
    for (std::size_t i{0}; i < margin.size(); ++i) {
        loss += gbdt::logistic_loss(margin[i], d.y[i], d.y[i] == 1 ? m.scale_pos_weight : 1.0);
    }
    return loss;
}

Outcome gbdt_numerics() {
    Checker c;

    // (a) gradient and hessian against central differences.
    double worst{0};
    for (int i{0}; i <= 100; ++i) {
        const double m{-5.0 + 0.1 * i};
        for (const int label : {0, 1}) {
            for (const double w : {0.5, 1.0, 3.0}) {
                const auto gh{gbdt::logistic_grad_hess(m, label, w)};
                const auto f = [&](double x) { return gbdt::logistic_loss(x, label, w); };
                const double hg{1e-5}, hh{1e-3};
                const double g{(f(m + hg) - f(m - hg)) / (2 * hg)};
                const double h{(gbdt::logistic_grad_hess(m + hh, label, w).grad -
                                gbdt::logistic_grad_hess(m - hh, label, w).grad) /
                               (2 * hh)};
                const double h2{(f(m + hh) - 2 * f(m) + f(m - hh)) / (hh * hh)};
                const double err{std::max({std::abs(gh.grad - g), std::abs(gh.hess - h), std::abs(gh.hess - h2)})};
                worst = std::max(worst, err);
                c.expect(err < 1e-6, "finite difference mismatch at margin " + fmt("%g", m));
            }
        }
    }

    // (b) training loss never increases.
    const std::vector<Data> sets{planted_data(1, 400, 6, 0.3, 0.8), linear_data(2), planted_data(3, 600, 9, 0.05, 1.2)};
    for (std::size_t s{0}; s < sets.size(); ++s) {
        const auto model{gbdt::train(sets[s].view(), sets[s].y, gbdt::TrainConfig{.n_rounds = 50, .gain_gamma = 0})};
        double previous{weighted_loss(model, sets[s], 0)};
        for (std::size_t t{1}; t <= 50; ++t) {
            const double loss{weighted_loss(model, sets[s], t)};
            c.expect(loss <= previous * (1 + 1e-12), "dataset " + std::to_string(s) + " loss rose at round " +
                                                         std::to_string(t));
            previous = loss;
        }
    }

    // (c) XOR with depth-2 trees.
    const auto x{xor_data()};
    const auto xor_model{gbdt::train(x.view(), x.y, gbdt::TrainConfig{.n_rounds = 50, .max_depth = 2})};
    const auto p{gbdt::predict_proba(xor_model, x.view())};
    std::size_t correct{0};
    for (std::size_t i{0}; i < p.size(); ++i) correct += (p[i] >= 0.5 ? 1 : 0) == x.y[i];
    c.expect(correct == p.size(), "XOR accuracy " + std::to_string(correct) + "/" + std::to_string(p.size()));

    // (d) JSON round trip through text.
    const auto& d{sets[0]};
    const auto model{gbdt::train(d.view(), d.y, gbdt::TrainConfig{.n_rounds = 30})};
    const auto text{gbdt::to_json(model).dump()};
    const auto reloaded{gbdt::from_json(nlohmann::json::parse(text))};
    c.expect(reloaded == model, "reloaded model differs");
    const auto before{gbdt::predict_proba(model, d.view())};
    const auto after{gbdt::predict_proba(reloaded, d.view())};
    bool exact{before.size() == after.size()};
    for (std::size_t i{0}; exact && i < before.size(); ++i) {
        exact = std::memcmp(&before[i], &after[i], sizeof(double)) == 0;
    }
    c.expect(exact, "predictions differ after reload");

    return c.outcome("max grad/hess error " + fmt("%.2g", worst) + ", loss monotone on 3 sets, XOR 1.0, reload exact");
}

// ---------------------------------------------------------------------------
// 5-7. Synthetic corpus through the storage path

struct SynthFixture {
    synth::Corpus corpus;
    features::FeatureMatrix matrix;
};

const SynthFixture& synth_fixture() {
    static const SynthFixture fixture = [] {
        SynthFixture f;
        f.corpus = synth::generate(synth::default_config());
        const auto path{std::filesystem::temp_directory_path() / "hpscan_acceptance_corpus.jsonl"};
        dataset::store(path, f.corpus.bundles);
        const auto bundles{dataset::load(path)};
        std::filesystem::remove(path);
        std::vector<SourceInfo> sources;
        for (const auto& b : bundles) sources.push_back(b.source);
        f.matrix = features::featurize(bundles, features::EncodingDictionary::fit(sources)).matrix;
        return f;
    }();
    return fixture;
}

Outcome synthetic_cv() {
    Checker c;
    const auto& f{synth_fixture()};
    const auto config{synth::default_config()};
    c.expect(config.seed == 7 && config.n_honeypots == 300 && config.n_non_honeypots == 5000,
             "default synth config changed");
    std::map<features::FeatureSet, double> mean;
    std::string summary;
    for (const auto set : {features::FeatureSet::kAll, features::FeatureSet::kTransactions, features::FeatureSet::kSource,
                           features::FeatureSet::kFundFlow}) {
        const auto report{eval::cross_validate(f.matrix, set, gbdt::TrainConfig{}, 10, config.seed)};
        mean[set] = report.test_mean;
        summary += std::string{summary.empty() ? "" : ", "} + std::string{features::to_string(set)} + " " +
                   fmt("%.4f", report.test_mean) + "+-" + fmt("%.4f", report.test_std);
    }
    c.expect(mean[features::FeatureSet::kAll] >= 0.95, "all features " + fmt("%.4f", mean[features::FeatureSet::kAll]));
    for (const auto set : {features::FeatureSet::kTransactions, features::FeatureSet::kSource, features::FeatureSet::kFundFlow}) {
        c.expect(mean[set] >= 0.90, std::string{features::to_string(set)} + " " + fmt("%.4f", mean[set]));
        c.expect(mean[features::FeatureSet::kAll] >= mean[set], "all below " + std::string{features::to_string(set)});
    }
    return c.outcome("test AUROC " + summary);
}

Outcome synthetic_loto() {
    Checker c;
    const auto& f{synth_fixture()};
    const auto techniques{eval::techniques_present(f.matrix)};
    c.expect(techniques.size() == 4, "expected 4 archetypes, found " + std::to_string(techniques.size()));
    std::string summary;
    for (const auto t : techniques) {
        const auto r{eval::leave_one_technique_out(f.matrix, t, gbdt::TrainConfig{})};
        summary += std::string{summary.empty() ? "" : ", "} + std::string{technique_token(t)} + " " +
                   fmt("%.3f", r.recall) + " (" + std::to_string(r.tp) + "/" + std::to_string(r.tp + r.fn) + ")";
        c.expect(r.recall >= 0.80, std::string{technique_token(t)} + " recall " + fmt("%.3f", r.recall));
    }
    return c.outcome("recall " + summary);
}

Outcome synthetic_triage() {
    Checker c;
    const auto& f{synth_fixture()};
    const std::uint64_t seed{synth::default_config().seed};
    const auto ranking{eval::triage_rank(f.matrix, gbdt::TrainConfig{}, 10, seed)};

    std::size_t unlabeled{0};
    std::map<Address, std::size_t> planted_rank;
    const std::set<Address> planted(f.corpus.planted.begin(), f.corpus.planted.end());
    for (const auto& e : ranking.entries) {
        if (e.label) continue;
        ++unlabeled;
        if (planted.contains(e.address)) planted_rank[e.address] = unlabeled;
    }
    const auto cutoff{static_cast<std::size_t>(std::ceil(0.01 * static_cast<double>(unlabeled)))};
    c.expect(!planted_rank.empty(), "no planted honeypot survived cleaning");
    std::string ranks;
    for (const auto& [address, rank] : planted_rank) {
        ranks += (ranks.empty() ? "" : ",") + std::to_string(rank);
        c.expect(rank <= cutoff, "planted " + address + " ranked " + std::to_string(rank) + " > " + std::to_string(cutoff));
    }

    const auto again{eval::triage_rank(f.matrix, gbdt::TrainConfig{}, 10, seed)};
    bool same{again.entries.size() == ranking.entries.size()};
    for (std::size_t i{0}; same && i < again.entries.size(); ++i) {
        same = again.entries[i].address == ranking.entries[i].address &&
               again.entries[i].mean_prob == ranking.entries[i].mean_prob &&
               again.entries[i].std_prob == ranking.entries[i].std_prob;
    }
    c.expect(same, "ranking differs between runs");

    // Constant models: no boosting rounds, so every model outputs its base score.
    const auto cleaned{features::clean(f.matrix).matrix};
    const auto constant{eval::train_fold_models(cleaned, gbdt::TrainConfig{.n_rounds = 0}, 10, seed,
                                                features::FeatureSet::kAll)};
    const auto flat{eval::score_ensemble(cleaned, constant)};
    bool zero{true};
    for (const auto& e : flat.entries) zero = zero && e.std_prob == 0.0;
    c.expect(zero, "constant ensemble has nonzero std");
    // Ten copies of one trained model.
    const std::vector<eval::FittedModel> copies(10, eval::fit_model(cleaned, std::vector<std::size_t>{[&] {
                                                                        std::vector<std::size_t> rows;
                                                                        for (std::size_t r{0}; r < cleaned.rows(); ++r)
                                                                            if (cleaned.is_labeled(r)) rows.push_back(r);
                                                                        return rows;
                                                                    }()},
                                                                    features::FeatureSet::kAll,
                                                                    gbdt::TrainConfig{.n_rounds = 10}));
    const auto identical{eval::score_ensemble(cleaned, copies)};
    for (const auto& e : identical.entries) zero = zero && e.std_prob == 0.0;
    c.expect(zero, "identical-model ensemble has nonzero std");

    return c.outcome("planted ranks " + ranks + " of " + std::to_string(unlabeled) + " unlabeled (top 1% = " +
                     std::to_string(cutoff) + "), deterministic, constant-ensemble std 0");
}

// ---------------------------------------------------------------------------
// 8. Preprocessing contract

features::FeatureMatrix random_matrix(Rng& rng) {
    std::vector<std::string> names{"hasByteCode", "hasSourceCode", "numSourceCodeLines", "compilerRuns", "library0",
                                   "compilerMinorVersion0", "compilerPatchVersion0", "compilerPatchVersion1"};
    for (const auto& n : features::transaction_columns()) names.push_back(n);
    const auto n_cases{rng.range(3, 20)};
    std::set<std::size_t> ids;
    while (ids.size() < static_cast<std::size_t>(n_cases)) ids.insert(rng.below(fundflow::kCaseCount));
    for (const auto id : ids) names.push_back("fundFlowCase" + std::to_string(id));

    std::vector<features::ColumnSpec> specs;
    for (const auto& n : names) specs.push_back(features::column_spec(n));
    features::FeatureMatrix m{specs};

    const auto rows{static_cast<std::size_t>(rng.range(5, 80))};
    // Some fund-flow columns never fire.
    std::vector<bool> dead(specs.size());
    for (std::size_t c{0}; c < specs.size(); ++c) dead[c] = rng.chance(0.3);
    std::vector<std::optional<double>> values(specs.size());
    for (std::size_t r{0}; r < rows; ++r) {
        for (std::size_t c{0}; c < specs.size(); ++c) {
            const auto& s{specs[c]};
            std::optional<double> v;
            switch (s.kind) {
                case features::Kind::kFlag:
                case features::Kind::kCategory: v = rng.chance(0.85) ? 1.0 : 0.0; break;
                case features::Kind::kUnbounded: v = rng.lognormal(std::log(50.0), 2.0) - 3.0; break;
                case features::Kind::kRatio: v = rng.uniform(); break;
                case features::Kind::kFrequency: v = dead[c] ? 0.0 : (rng.chance(0.5) ? rng.uniform() : 0.0); break;
            }
            if (s.family == features::Family::kTransaction && s.kind != features::Kind::kFlag && rng.chance(0.2)) {
                v.reset();
            }
            values[c] = v;
        }
        m.add_row(hex_address(r + 1), HoneypotLabel::negative(), values);
    }
    return m;
}

Outcome preprocessing_contract() {
    Checker c;
    Rng rng{8};
    double worst{0};
    for (int trial{0}; trial < 200; ++trial) {
        const auto m{random_matrix(rng)};
        const auto cleaned{features::clean(m)};
        const auto& cm{cleaned.matrix};

        // Row filter.
        const auto bc{*m.column_index("hasByteCode")};
        const auto sc{*m.column_index("hasSourceCode")};
        std::vector<std::size_t> expected_rows;
        for (std::size_t r{0}; r < m.rows(); ++r) {
            if (m.at(r, bc) != 0 && m.at(r, sc) != 0) expected_rows.push_back(r);
        }
        c.expect(cleaned.source_rows == expected_rows, "row filter");
        // Column drop and flag.
        for (const auto& s : cm.columns()) c.expect(!s.internal_aggregate, "internal aggregate " + s.name + " kept");
        c.expect(cm.column_index("hasInternalTransactions").has_value(), "hasInternalTransactions missing");
        std::size_t expected_cols{0};
        for (const auto& s : m.columns()) expected_cols += s.internal_aggregate ? 0 : 1;
        c.expect(cm.cols() == expected_cols, "column count after drop");
        // Zero fill, everything else untouched.
        for (std::size_t r{0}; r < cm.rows(); ++r) {
            for (std::size_t col{0}; col < cm.cols(); ++col) {
                const auto src_col{*m.column_index(cm.columns()[col].name)};
                const auto src_row{cleaned.source_rows[r]};
                c.expect(!cm.is_missing(r, col), "missing cell survived");
                const double want{m.is_missing(src_row, src_col) ? 0.0 : m.at(src_row, src_col)};
                c.expect(cm.at(r, col) == want, "cell changed by clean");
            }
        }
        if (cm.rows() == 0) continue;

        std::vector<std::size_t> fit;
        for (std::size_t r{0}; r < cm.rows(); ++r) {
            if (rng.chance(0.7)) fit.push_back(r);
        }
        if (fit.empty()) fit.push_back(0);
        const auto p{features::Preprocessor::fit(cm, fit)};
        const auto out{p.transform(cm)};

        // Dead fund-flow columns are exactly the all-zero ones on the fit rows.
        for (std::size_t col{0}; col < cm.cols(); ++col) {
            const auto& s{cm.columns()[col]};
            if (s.kind != features::Kind::kFrequency) {
                c.expect(out.column_index(s.name).has_value(), "non-frequency column " + s.name + " dropped");
                continue;
            }
            bool all_zero{true};
            for (const auto r : fit) all_zero = all_zero && cm.at(r, col) == 0.0;
            c.expect(out.column_index(s.name).has_value() == !all_zero, "dead-column rule for " + s.name);
        }
        // Scaled columns land in [0, 1] on the fit rows.
        for (std::size_t col{0}; col < out.cols(); ++col) {
            const auto& s{out.columns()[col]};
            if (s.kind != features::Kind::kUnbounded) continue;
            for (const auto r : fit) {
                c.expect(out.at(r, col) >= 0.0 && out.at(r, col) <= 1.0, s.name + " outside [0,1] on a fit row");
            }
        }
        // Inverse round trip.
        auto restored{out};
        p.inverse(restored);
        for (std::size_t col{0}; col < out.cols(); ++col) {
            const auto src{*cm.column_index(out.columns()[col].name)};
            const auto& scaler{p.scaler()};
            const auto it{std::find(scaler.columns.begin(), scaler.columns.end(), out.columns()[col].name)};
            const bool constant{it != scaler.columns.end() &&
                                scaler.min[static_cast<std::size_t>(it - scaler.columns.begin())] ==
                                    scaler.max[static_cast<std::size_t>(it - scaler.columns.begin())]};
            for (std::size_t r{0}; r < out.rows(); ++r) {
                if (constant) continue;  // constant columns collapse to 0 by convention
                const double a{restored.at(r, col)}, b{cm.at(r, src)};
                const double rel{std::abs(a - b) / std::max(1.0, std::abs(b))};
                worst = std::max(worst, rel);
                c.expect(rel <= 1e-9, "inverse mismatch in " + out.columns()[col].name);
            }
        }
    }
    return c.outcome("200 random matrices, max inverse error " + fmt("%.2g", worst));
}

// ---------------------------------------------------------------------------
// 9. Stratification

Outcome stratification() {
    Checker c;
    std::vector<int> labels(295 + 158'568 / 100, 0);
    std::fill(labels.begin(), labels.begin() + 295, 1);
    const auto folds{eval::stratified_kfold(labels, 10, 7)};
    std::vector<std::size_t> pos(10);
    for (std::size_t i{0}; i < labels.size(); ++i) pos[folds.fold[i]] += static_cast<std::size_t>(labels[i]);
    for (const auto p : pos) c.expect(p == 29 || p == 30, "fold with " + std::to_string(p) + " positives");

    Rng rng{9};
    for (int trial{0}; trial < 100; ++trial) {
        const auto k{static_cast<std::size_t>(rng.range(2, 12))};
        const auto n_pos{static_cast<std::size_t>(rng.range(static_cast<std::int64_t>(k), 400))};
        const auto n_neg{static_cast<std::size_t>(rng.range(static_cast<std::int64_t>(k), 2000))};
        std::vector<int> y(n_pos + n_neg, 0);
        std::fill(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n_pos), 1);
        rng.shuffle(std::span{y});
        const auto seed{rng.next()};
        const auto a{eval::stratified_kfold(y, k, seed)};
        c.expect(a.fold == eval::stratified_kfold(y, k, seed).fold, "not deterministic");
        std::vector<std::size_t> seen(y.size(), 0);
        for (std::size_t f{0}; f < k; ++f) {
            const auto test{a.test_indices(f)};
            const auto train{a.train_indices(f)};
            c.expect(test.size() + train.size() == y.size(), "train/test do not cover");
            std::size_t p{0};
            for (const auto i : test) {
                ++seen[i];
                p += static_cast<std::size_t>(y[i]);
            }
            const std::size_t q{test.size() - p};
            c.expect(p == n_pos / k || p == (n_pos + k - 1) / k, "positives not proportional");
            c.expect(q + 1 >= n_neg / k && q <= (n_neg + k - 1) / k + 1, "negatives not proportional");
        }
        for (const auto s : seen) c.expect(s == 1, "index not in exactly one fold");
    }
    return c.outcome("295 positives -> {29,30} per fold; 100 random partitions valid");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "case enumeration", 1, case_enumeration},
        {2, "classifier totality", 10, classifier_totality},
        {3, "AUROC oracle equivalence", 30, auroc_oracle},
        {4, "GBDT numerical checks", 60, gbdt_numerics},
        {5, "synthetic cross-validation", 300, synthetic_cv},
        {6, "synthetic leave-one-archetype-out", 300, synthetic_loto},
        {7, "triage protocol", 300, synthetic_triage},
        {8, "preprocessing contract", 30, preprocessing_contract},
        {9, "stratification", 10, stratification},
    };

    // Corpus generation, storage round trip and featurization are shared by 5-7.
    const auto prep_start{std::chrono::steady_clock::now()};
    const auto& fixture{synth_fixture()};
    const double prep{std::chrono::duration<double>(std::chrono::steady_clock::now() - prep_start).count()};
    std::printf("INFO synthetic corpus: %zu bundles -> %zu x %zu features via dataset store/load (%.2fs)\n",
                fixture.corpus.bundles.size(), fixture.matrix.rows(), fixture.matrix.cols(), prep);
    std::fflush(stdout);

    int failed{0};
    for (const auto& c : criteria) {
        const auto start{std::chrono::steady_clock::now()};
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string{"threw: "} + e.what()};
        }
        const double elapsed{std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()};
        if (elapsed > c.limit_seconds) {
            o.pass = false;
            o.detail += "; runtime " + fmt("%.2f", elapsed) + "s exceeds " + fmt("%.0f", c.limit_seconds) + "s";
        }
        std::printf("%s criterion %d (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    elapsed);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
