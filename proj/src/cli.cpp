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


#include <hpscan/cli.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <hpscan/chain_data.hpp>
#include <hpscan/dataset.hpp>
#include <hpscan/error.hpp>
#include <hpscan/etherscan.hpp>
#include <hpscan/eval.hpp>
#include <hpscan/features.hpp>
#include <hpscan/fundflow.hpp>
#include <hpscan/gbdt.hpp>
#include <hpscan/preprocess.hpp>
#include <hpscan/synth.hpp>
#include <hpscan/version.hpp>

namespace hpscan::cli {

namespace {

    using nlohmann::json;

    struct Streams {
        std::istream& in;
        std::ostream& out;
    };

    // Runs `fn` against --out when set, otherwise the command's stdout.
    void with_output(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& fn) {
        if (path.empty() || path == "-") {
            fn(fallback);
            return;
        }
        std::ofstream file{path};
        if (!file) throw InputError{"cannot write " + path};
        fn(file);
        if (!file) throw InputError{"write failed for " + path};
    }

    template <typename T>
    T with_input(const std::string& path, std::istream& fallback, const std::function<T(std::istream&)>& fn) {
        if (path.empty() || path == "-") return fn(fallback);
        std::ifstream file{path};
        if (!file) throw InputError{"cannot read " + path};
        return fn(file);
    }

    std::vector<ContractBundle> read_dataset(const std::string& path, std::istream& in) {
        return with_input<std::vector<ContractBundle>>(path, in, [](std::istream& s) { return dataset::read(s); });
    }

    features::FeatureMatrix read_features(const std::string& path, std::istream& in) {
        return with_input<features::FeatureMatrix>(path, in, [](std::istream& s) { return features::read_csv(s); });
    }

    features::FeatureSet feature_set(const std::string& name) {
        const auto set{features::parse_feature_set(name)};
        if (!set) throw InputError{"unknown feature set '" + name + "' (all, transactions, source, fundflow)"};
        return *set;
    }

    std::optional<bool> parse_flag(const std::string& s, const std::string& option) {
        if (s.empty()) return std::nullopt;
        if (s == "yes" || s == "true" || s == "1") return true;
        if (s == "no" || s == "false" || s == "0") return false;
        throw InputError{"--" + option + " expects yes or no, got '" + s + "'"};
    }

    std::optional<fundflow::Balance> parse_balance_option(const std::string& s, const std::string& option) {
        if (s.empty()) return std::nullopt;
        const auto b{fundflow::parse_balance(s)};
        if (!b) throw InputError{"--" + option + " expects up, unchanged, down or n/a, got '" + s + "'"};
        return b;
    }

    struct TrainOptions {
        int rounds{gbdt::TrainConfig{}.n_rounds};
        double learning_rate{gbdt::TrainConfig{}.learning_rate};
        int max_depth{gbdt::TrainConfig{}.max_depth};
        double lambda{gbdt::TrainConfig{}.l2_lambda};
        double gamma{gbdt::TrainConfig{}.gain_gamma};
        double min_child_weight{gbdt::TrainConfig{}.min_child_weight};
        double scale_pos_weight{0};

        void attach(CLI::App* app) {
            app->add_option("--rounds", rounds, "Boosting rounds")->capture_default_str();
            app->add_option("--learning-rate", learning_rate, "Shrinkage")->capture_default_str();
            app->add_option("--max-depth", max_depth, "Tree depth")->capture_default_str();
            app->add_option("--lambda", lambda, "L2 penalty on leaf weights")->capture_default_str();
            app->add_option("--gamma", gamma, "Minimum split gain")->capture_default_str();
            app->add_option("--min-child-weight", min_child_weight, "Minimum hessian per child")->capture_default_str();
            app->add_option("--scale-pos-weight", scale_pos_weight,
                            "Positive-class weight; 0 means negatives/positives of each training split")
                ->capture_default_str();
        }

        [[nodiscard]] gbdt::TrainConfig config(std::uint64_t seed) const {
            gbdt::TrainConfig c;
            c.n_rounds = rounds;
            c.learning_rate = learning_rate;
            c.max_depth = max_depth;
            c.l2_lambda = lambda;
            c.gain_gamma = gamma;
            c.min_child_weight = min_child_weight;
            if (scale_pos_weight != 0) c.scale_pos_weight = scale_pos_weight;
            c.seed = seed;
            c.validate();
            return c;
        }
    };

    std::vector<std::string> read_lines(const std::string& path) {
        std::ifstream file{path};
        if (!file) throw InputError{"cannot read " + path};
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(file, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            const auto start{line.find_first_not_of(" \t")};
            if (start == std::string::npos || line[start] == '#') continue;
            lines.push_back(line.substr(start));
        }
        return lines;
    }

    // "address,technique" rows; technique NONE marks a negative.
    std::map<Address, HoneypotLabel> read_labels(const std::string& path) {
        std::map<Address, HoneypotLabel> seeds;
        std::size_t n{0};
        for (const auto& line : read_lines(path)) {
            ++n;
            if (n == 1 && line.starts_with("address,")) continue;
            const auto comma{line.find(',')};
            if (comma == std::string::npos) throw DatasetError{n, "expected address,technique"};
            const auto address{normalize_address(line.substr(0, comma), "address")};
            const auto token{line.substr(comma + 1)};
            const auto t{parse_technique(token)};
            if (!t) throw DatasetError{n, "unknown technique '" + token + "'"};
            seeds[address] = *t == Technique::kNone ? HoneypotLabel::negative() : HoneypotLabel::honeypot(*t);
        }
        return seeds;
    }

    json error_json(const std::exception& e, std::string_view kind, const std::string& command) {
        json j{{"kind", kind}, {"message", e.what()}};
        if (!command.empty()) j["command"] = command;
        if (const auto* p{dynamic_cast<const ParseError*>(&e)}) {
            j["type"] = "ParseError";
            j["field"] = p->field();
        } else if (const auto* d{dynamic_cast<const DatasetError*>(&e)}) {
            j["type"] = "DatasetError";
            j["line"] = d->line();
        } else if (dynamic_cast<const LabelConflictError*>(&e) != nullptr) {
            j["type"] = "LabelConflictError";
        } else if (const auto* f{dynamic_cast<const FetchError*>(&e)}) {
            j["type"] = "FetchError";
            j["retryable"] = f->retryable();
        } else if (dynamic_cast<const InputError*>(&e) != nullptr) {
            j["type"] = "InputError";
        } else {
            j["type"] = "InternalError";
        }
        return {{"error", std::move(j)}};
    }

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"hpscan: honeypot detection for Ethereum smart contracts", "hpscan"};
    app.set_version_flag("--version", std::string{kVersion});
    app.set_config("--config", "", "TOML/INI file with option defaults; command-line flags win");
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::uint64_t> seed_flag;
    unsigned jobs{1};
    app.add_option("--seed", seed_flag, "Seed for every random choice (default 7)");
    app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1U, 1024U))->capture_default_str();
    const auto seed = [&] { return seed_flag.value_or(7); };

    std::string out_path;
    std::string in_path;
    std::function<void()> action;
    std::string command;

    // ingest
    auto* ingest{app.add_subcommand("ingest", "Fetch contracts from an explorer API or fixtures into a dataset")};
    std::string addresses_path, labels_path, fixtures_dir, api_url;
    bool append{false}, default_negative{false};
    etherscan::ClientConfig client{etherscan::ClientConfig::from_environment()};
    ingest->add_option("--addresses", addresses_path, "File with one contract address per line")
        ->required()
        ->check(CLI::ExistingFile);
    ingest->add_option("--labels", labels_path, "Seed labels: address,technique (NONE for negatives)")
        ->check(CLI::ExistingFile);
    ingest->add_flag("--default-negative", default_negative, "Label contracts without a seed as negatives");
    auto* fixtures_opt{ingest->add_option("--fixtures", fixtures_dir, "Serve responses from <dir>/<address>.json")
                           ->check(CLI::ExistingDirectory)};
    ingest->add_option("--api-url", api_url, "Explorer API endpoint")->excludes(fixtures_opt);
    ingest->add_option("--rps", client.requests_per_second, "Request rate limit")->capture_default_str();
    ingest->add_option("--page-size", client.page_size, "Records per page")->capture_default_str();
    ingest->add_option("--retries", client.max_retries, "Retries per request")->capture_default_str();
    ingest->add_option("--out", out_path, "Dataset file (JSON Lines); stdout when omitted");
    ingest->add_flag("--append", append, "Append to an existing dataset file");
    ingest->callback([&] {
        command = "ingest";
        action = [&] {
            std::vector<Address> addresses;
            for (const auto& line : read_lines(addresses_path)) addresses.push_back(normalize_address(line, "address"));
            const auto seeds{labels_path.empty() ? std::map<Address, HoneypotLabel>{} : read_labels(labels_path)};
            if (!api_url.empty()) client.base_url = api_url;
            client.concurrency = jobs;
            std::shared_ptr<etherscan::Transport> transport;
            if (!fixtures_dir.empty()) {
                transport = std::make_shared<etherscan::FixtureTransport>(fixtures_dir);
                client.requests_per_second = 0;
            } else {
                transport = std::make_shared<etherscan::HttpTransport>(client.base_url);
            }
            etherscan::Client fetcher{client, transport};
            std::vector<ContractBundle> bundles;
            std::size_t failures{0};
            for (auto& outcome : fetcher.fetch_many(addresses)) {
                if (outcome.bundle) {
                    bundles.push_back(std::move(*outcome.bundle));
                } else {
                    ++failures;
                    err << json{{"warning", {{"address", outcome.address}, {"message", outcome.error}}}}.dump() << '\n';
                }
            }

            std::vector<Contract> contracts;
            for (const auto& b : bundles) contracts.push_back(b.contract);
            const auto labels{propagate_labels(contracts, seeds)};
            std::set<Sha256Digest> seeded;
            for (const auto& b : bundles) {
                if (seeds.contains(b.contract.address)) seeded.insert(bytecode_hash(b.contract.bytecode));
            }
            for (auto& b : bundles) {
                const bool has_seed{seeded.contains(bytecode_hash(b.contract.bytecode))};
                if (has_seed || default_negative) b.label = labels.at(b.contract.address);
            }

            if (out_path.empty() || out_path == "-") {
                dataset::write(out, bundles);
            } else {
                dataset::store(out_path, bundles, append);
            }
            if (failures > 0) throw InputError{std::to_string(failures) + " address(es) could not be fetched"};
        };
    });

    // synth
    auto* synth_cmd{app.add_subcommand("synth", "Generate a synthetic labeled corpus")};
    std::string synth_config_path, truth_path;
    std::optional<std::size_t> n_hp, n_non, n_unl, n_planted;
    synth_cmd->add_option("--synth-config", synth_config_path, "Generator config (JSON); built-in defaults otherwise")
        ->check(CLI::ExistingFile);
    synth_cmd->add_option("--honeypots", n_hp, "Labeled honeypots");
    synth_cmd->add_option("--non-honeypots", n_non, "Labeled non-honeypots");
    synth_cmd->add_option("--unlabeled", n_unl, "Unlabeled benign contracts");
    synth_cmd->add_option("--planted", n_planted, "Unlabeled planted honeypots");
    synth_cmd->add_option("--truth", truth_path, "Write planted honeypot addresses here");
    synth_cmd->add_option("--out", out_path, "Dataset file; stdout when omitted");
    synth_cmd->callback([&] {
        command = "synth";
        action = [&] {
            auto cfg{synth_config_path.empty() ? synth::default_config() : synth::SynthConfig::load(synth_config_path)};
            if (seed_flag) cfg.seed = *seed_flag;
            if (n_hp) cfg.n_honeypots = *n_hp;
            if (n_non) cfg.n_non_honeypots = *n_non;
            if (n_unl) cfg.n_unlabeled = *n_unl;
            if (n_planted) cfg.n_planted = *n_planted;
            const auto corpus{synth::generate(cfg)};
            if (out_path.empty() || out_path == "-") {
                dataset::write(out, corpus.bundles);
            } else {
                dataset::store(out_path, corpus.bundles);
            }
            if (!truth_path.empty()) {
                with_output(truth_path, out, [&](std::ostream& o) {
                    for (const auto& a : corpus.planted) o << a << '\n';
                });
            }
        };
    });

    // cases
    auto* cases{app.add_subcommand("cases", "Print the fund-flow case catalog")};
    cases->add_option("--out", out_path, "Output file; stdout when omitted");
    cases->callback([&] {
        command = "cases";
        action = [&] { with_output(out_path, out, [](std::ostream& o) { fundflow::write_catalog(o); }); };
    });

    // featurize
    auto* featurize{app.add_subcommand("featurize", "Turn a dataset into a feature CSV")};
    std::string dictionary_in, dictionary_out;
    featurize->add_option("--in", in_path, "Dataset file; stdin when omitted");
    featurize->add_option("--dictionary", dictionary_in, "Reuse a saved encoding dictionary")->check(CLI::ExistingFile);
    featurize->add_option("--save-dictionary", dictionary_out, "Write the encoding dictionary used");
    featurize->add_option("--out", out_path, "Feature CSV; stdout when omitted");
    featurize->callback([&] {
        command = "featurize";
        action = [&] {
            const auto bundles{read_dataset(in_path, in)};
            features::EncodingDictionary dict;
            if (!dictionary_in.empty()) {
                std::ifstream file{dictionary_in};
                try {
                    dict = features::EncodingDictionary::from_json(json::parse(file));
                } catch (const json::parse_error& e) {
                    throw ParseError{dictionary_in, e.what()};
                }
            } else {
                std::vector<SourceInfo> sources;
                for (const auto& b : bundles) sources.push_back(b.source);
                dict = features::EncodingDictionary::fit(sources);
            }
            if (!dictionary_out.empty()) {
                with_output(dictionary_out, out, [&](std::ostream& o) { o << dict.to_json().dump(2) << '\n'; });
            }
            const auto result{features::featurize(bundles, dict)};
            with_output(out_path, out, [&](std::ostream& o) {
                o << eval::metadata_line(seed()) << '\n';
                features::write_csv(o, result.matrix);
            });
        };
    });

    // cv
    auto* cv{app.add_subcommand("cv", "Stratified k-fold cross-validation")};
    std::string set_name{"all"};
    std::size_t folds{10};
    TrainOptions train;
    cv->add_option("--in", in_path, "Feature CSV; stdin when omitted");
    cv->add_option("--features", set_name, "all, transactions, source, fundflow or every")->capture_default_str();
    cv->add_option("-k,--folds", folds, "Folds")->check(CLI::Range(2, 1000))->capture_default_str();
    cv->add_option("--out", out_path, "Report CSV; stdout when omitted");
    train.attach(cv);
    cv->callback([&] {
        command = "cv";
        action = [&] {
            const auto config{train.config(seed())};
            std::vector<features::FeatureSet> sets;
            if (set_name == "every") {
                sets = {features::FeatureSet::kAll, features::FeatureSet::kTransactions, features::FeatureSet::kSource,
                        features::FeatureSet::kFundFlow};
            } else {
                sets = {feature_set(set_name)};
            }
            const auto m{read_features(in_path, in)};
            std::vector<eval::CvReport> reports;
            for (const auto s : sets) reports.push_back(eval::cross_validate(m, s, config, folds, seed(), jobs));
            with_output(out_path, out, [&](std::ostream& o) { eval::write_cv_csv(o, reports, seed()); });
        };
    });

    // loto
    auto* loto{app.add_subcommand("loto", "Leave-one-technique-out recall")};
    std::vector<std::string> technique_names;
    double threshold{0.5};
    loto->add_option("--in", in_path, "Feature CSV; stdin when omitted");
    loto->add_option("--technique", technique_names, "Technique to hold out (repeatable); all present by default");
    loto->add_option("--threshold", threshold, "Probability counted as detection")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    loto->add_option("--features", set_name, "all, transactions, source or fundflow")->capture_default_str();
    loto->add_option("--out", out_path, "Report CSV; stdout when omitted");
    train.attach(loto);
    loto->callback([&] {
        command = "loto";
        action = [&] {
            const auto config{train.config(seed())};
            const auto set{feature_set(set_name)};
            std::vector<Technique> techniques;
            for (const auto& name : technique_names) {
                const auto t{parse_technique(name)};
                if (!t || *t == Technique::kNone) throw InputError{"unknown technique '" + name + "'"};
                techniques.push_back(*t);
            }
            const auto m{read_features(in_path, in)};
            if (techniques.empty()) techniques = eval::techniques_present(m);
            std::vector<eval::LotoResult> results;
            for (const auto t : techniques) results.push_back(eval::leave_one_technique_out(m, t, config, set, threshold));
            with_output(out_path, out, [&](std::ostream& o) { eval::write_loto_csv(o, results, seed()); });
        };
    });

    // rank
    auto* rank{app.add_subcommand("rank", "Ensemble triage ranking")};
    std::optional<std::size_t> top;
    bool unlabeled_only{false};
    rank->add_option("--in", in_path, "Feature CSV; stdin when omitted");
    rank->add_option("-k,--folds", folds, "Ensemble size (fold-complement models)")
        ->check(CLI::Range(2, 1000))
        ->capture_default_str();
    rank->add_option("--features", set_name, "all, transactions, source or fundflow")->capture_default_str();
    rank->add_option("--top", top, "Rows to print");
    rank->add_flag("--unlabeled-only", unlabeled_only, "Only list contracts without a label");
    rank->add_option("--out", out_path, "Ranking CSV; stdout when omitted");
    train.attach(rank);
    rank->callback([&] {
        command = "rank";
        action = [&] {
            const auto config{train.config(seed())};
            const auto set{feature_set(set_name)};
            const auto m{read_features(in_path, in)};
            const auto ranking{eval::triage_rank(m, config, folds, seed(), set, jobs)};
            with_output(out_path, out,
                        [&](std::ostream& o) { eval::write_triage_csv(o, ranking, seed(), top, unlabeled_only); });
        };
    });

    // query
    auto* query{app.add_subcommand("query", "Summed fund-flow frequencies of the cases matching a partial assignment")};
    std::string q_sender, q_creation, q_error, q_creator, q_contract, q_balance_sender, q_pos, q_neg;
    query->add_option("--in", in_path, "Dataset file; stdin when omitted");
    query->add_option("--sender", q_sender, "creator or other");
    query->add_option("--creation", q_creation, "yes or no");
    query->add_option("--error", q_error, "yes or no");
    query->add_option("--balance-creator", q_creator, "up, unchanged or down");
    query->add_option("--balance-contract", q_contract, "up, unchanged or down");
    query->add_option("--balance-sender", q_balance_sender, "up, unchanged, down or n/a");
    query->add_option("--other-positive", q_pos, "yes or no");
    query->add_option("--other-negative", q_neg, "yes or no");
    query->add_option("--out", out_path, "Result CSV; stdout when omitted");
    query->callback([&] {
        command = "query";
        action = [&] {
            fundflow::CasePattern pattern;
            if (!q_sender.empty()) {
                pattern.sender = fundflow::parse_sender(q_sender);
                if (!pattern.sender) throw InputError{"--sender expects creator or other, got '" + q_sender + "'"};
            }
            pattern.creation = parse_flag(q_creation, "creation");
            pattern.error = parse_flag(q_error, "error");
            pattern.balance_creator = parse_balance_option(q_creator, "balance-creator");
            pattern.balance_contract = parse_balance_option(q_contract, "balance-contract");
            pattern.balance_sender = parse_balance_option(q_balance_sender, "balance-sender");
            pattern.other_positive = parse_flag(q_pos, "other-positive");
            pattern.other_negative = parse_flag(q_neg, "other-negative");

            const auto bundles{read_dataset(in_path, in)};
            std::vector<Address> addresses;
            std::vector<fundflow::FrequencyVector> vectors;
            for (const auto& b : bundles) {
                if (!b.found || b.normals.empty()) continue;
                const auto events{fundflow::contract_events(b)};
                addresses.push_back(b.contract.address);
                vectors.push_back(fundflow::frequency_vector(events));
            }
            const auto sums{fundflow::query_cases(pattern, vectors)};
            with_output(out_path, out, [&](std::ostream& o) {
                o << eval::metadata_line(seed()) << '\n' << "address,frequency\n";
                char buf[32];
                for (std::size_t i{0}; i < sums.size(); ++i) {
                    std::snprintf(buf, sizeof buf, "%.9g", sums[i]);
                    o << addresses[i] << ',' << buf << '\n';
                }
            });
        };
    });

    // report
    auto* report{app.add_subcommand("report", "Feature importances and the preprocessing column report")};
    std::string column_report_path, model_out;
    report->add_option("--in", in_path, "Feature CSV; stdin when omitted");
    report->add_option("--features", set_name, "all, transactions, source or fundflow")->capture_default_str();
    report->add_option("--top", top, "Importances to print");
    report->add_option("--column-report", column_report_path, "Write the column report (JSON) here");
    report->add_option("--model-out", model_out, "Save the trained model (JSON)");
    report->add_option("--out", out_path, "Importance CSV; stdout when omitted");
    train.attach(report);
    report->callback([&] {
        command = "report";
        action = [&] {
            const auto config{train.config(seed())};
            const auto set{feature_set(set_name)};
            const auto m{read_features(in_path, in)};
            features::ColumnReport columns;
            const auto cleaned{features::clean(m, &columns)};
            std::vector<std::size_t> labeled;
            for (std::size_t r{0}; r < cleaned.matrix.rows(); ++r) {
                if (cleaned.matrix.is_labeled(r)) labeled.push_back(r);
            }
            if (labeled.empty()) throw InputError{"no labeled rows to train on"};
            static_cast<void>(features::Preprocessor::fit(cleaned.matrix, labeled, &columns));
            const auto fitted{eval::fit_model(cleaned.matrix, labeled, set, config)};
            if (!model_out.empty()) gbdt::save(fitted.model, model_out);
            if (!column_report_path.empty()) {
                with_output(column_report_path, out, [&](std::ostream& o) { o << columns.to_json().dump(2) << '\n'; });
            }
            const auto importance{gbdt::feature_importance(fitted.model)};
            with_output(out_path, out, [&](std::ostream& o) {
                o << eval::metadata_line(seed()) << '\n' << "rank,feature,importance\n";
                char buf[32];
                std::size_t i{0};
                for (const auto idx : importance.top(top.value_or(importance.importance.size()))) {
                    std::snprintf(buf, sizeof buf, "%.9g", importance.importance[idx]);
                    o << ++i << ',' << importance.feature_names[idx] << ',' << buf << '\n';
                }
            });
        };
    });

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::CallForVersion&) {
        out << "hpscan " << kVersion << '\n';
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << json{{"error", {{"kind", "usage"}, {"type", e.get_name()}, {"message", e.what()}}}}.dump() << '\n';
        return kInputFailure;
    } catch (const InputError& e) {
        err << error_json(e, "input", command).dump() << '\n';
        return kInputFailure;
    }

    try {
        if (action) action();
    } catch (const InputError& e) {
        err << error_json(e, "input", command).dump() << '\n';
        return kInputFailure;
    } catch (const FetchError& e) {
        err << error_json(e, "input", command).dump() << '\n';
        return kInputFailure;
    } catch (const std::exception& e) {
        err << error_json(e, "internal", command).dump() << '\n';
        return kInternalFailure;
    }
    return kSuccess;
}

int main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i{1}; i < argc; ++i) args.emplace_back(argv[i]);
    std::ios::sync_with_stdio(false);
    return run(args, std::cin, std::cout, std::cerr);
}

}  // namespace hpscan::cli
