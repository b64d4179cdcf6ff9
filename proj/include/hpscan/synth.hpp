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
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <hpscan/types.hpp>

// Synthetic corpus generator. Every parameter lives in a JSON document; the
// shipped defaults are data/synth_default.json (compiled in as
// default_config()).
namespace hpscan::synth {

// Inclusive integer range, sampled uniformly. JSON: [min, max].
struct Range {
    std::int64_t min{0};
    std::int64_t max{0};
};

// median * exp(sigma * N(0,1)). JSON: {"median": m, "sigma": s}.
struct LogNormal {
    double median{1};
    double sigma{0};
};

struct SourceProfile {
    // Full compiler strings ("v0.4.24+commit.e67f0147") to relative weight.
    std::map<std::string, double> compilers;
    LogNormal lines;
    LogNormal runs;
    double runs_zero{0};
    // Library name to weight; "" means no library.
    std::map<std::string, double> libraries;
    double missing_source{0};
};

struct Gas {
    LogNormal limit{60000, 0.3};
    double used_min{0.3};
    double used_max{0.9};
};

// Creation, creator deposit, victim traffic, creator withdrawal.
struct HoneypotArchetype {
    std::string name;
    Technique technique{Technique::kNone};
    double weight{0};
    LogNormal deposit_ether{1, 0.5};
    LogNormal victim_ether{1, 0.5};
    Range victim_deposits{1, 2};
    Range probe_calls{0, 3};
    Range errored_calls{0, 2};
    Range creator_calls{0, 1};
    double deposit_at_creation{0};
    double withdraw{0.9};
    double block_gap{500};
    Gas gas;
    SourceProfile source;
};

// Benign workloads; the mix of sender, value and payout rates defines the
// archetype (token-like, utility, payout, wallet).
struct WorkloadArchetype {
    std::string name;
    double weight{0};
    LogNormal tx_count{10, 0.5};
    double creator_share{0.1};
    // Distinct non-creator senders per non-creator call.
    double distinct_senders{0.8};
    double value_prob{0};
    LogNormal value_ether{0.1, 1};
    double creator_value_prob{0};
    double error_rate{0.02};
    // Chance that a call makes the contract pay out; to the caller or a third party.
    double payout_prob{0};
    double payout_to_sender{0.5};
    // Chance that a creator call sweeps the balance to the creator.
    double creator_withdraw{0};
    double internal_create{0};
    double block_gap{200};
    Gas gas;
    SourceProfile source;
};

struct Noise {
    double omit_creator_deposit{0.10};
    double victim_deposit{0.35};
    // Lets a victim withdraw from a honeypot. Off by default.
    double failed_honeypot{0};
    double empty_bytecode{0.01};
    // Share of contracts reusing the bytecode of an earlier contract of the
    // same archetype.
    double clone{0.1};
};

struct SynthConfig {
    std::uint64_t seed{0};
    std::size_t n_honeypots{0};
    std::size_t n_non_honeypots{0};
    // Unlabeled triage pool: benign workloads plus planted clean-lifecycle honeypots.
    std::size_t n_unlabeled{0};
    std::size_t n_planted{0};
    Noise noise;
    std::vector<HoneypotArchetype> honeypots;
    std::vector<WorkloadArchetype> workloads;

    // Throws InputError listing every violated field.
    void validate() const;

    [[nodiscard]] static SynthConfig from_json(const nlohmann::json& j);
    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] static SynthConfig load(const std::filesystem::path& path);
};

[[nodiscard]] const nlohmann::json& default_config_json();
[[nodiscard]] SynthConfig default_config();

struct Corpus {
    std::vector<ContractBundle> bundles;
    // Addresses of the planted honeypots in the unlabeled pool.
    std::vector<Address> planted;
};

// Deterministic in the config (seed included).
[[nodiscard]] Corpus generate(const SynthConfig& config);

}  // namespace hpscan::synth
