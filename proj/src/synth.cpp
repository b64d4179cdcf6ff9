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


#include <hpscan/synth.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

#include <hpscan/chain_data.hpp>
#include <hpscan/error.hpp>
#include <hpscan/random.hpp>

#include "synth_default_config.hpp"

namespace hpscan::synth {

namespace {

    using nlohmann::json;

    // Reads `key` into `out` when present; type errors name the field.
    template <typename T>
    void read(const json& j, std::string_view key, T& out, const std::string& where) {
        const auto it{j.find(key)};
        if (it == j.end()) return;
        try {
            out = it->get<T>();
        } catch (const json::exception& e) {
            throw ParseError{where + std::string{key}, e.what()};
        }
    }

    void read(const json& j, std::string_view key, Range& out, const std::string& where) {
        const auto it{j.find(key)};
        if (it == j.end()) return;
        if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() || !(*it)[1].is_number_integer()) {
            throw ParseError{where + std::string{key}, "expected [min, max] integers"};
        }
        out = {(*it)[0].get<std::int64_t>(), (*it)[1].get<std::int64_t>()};
    }

    void read(const json& j, std::string_view key, LogNormal& out, const std::string& where) {
        const auto it{j.find(key)};
        if (it == j.end()) return;
        if (!it->is_object()) throw ParseError{where + std::string{key}, "expected {median, sigma}"};
        read(*it, "median", out.median, where + std::string{key} + ".");
        read(*it, "sigma", out.sigma, where + std::string{key} + ".");
    }

    void read(const json& j, std::string_view key, Gas& out, const std::string& where) {
        const auto it{j.find(key)};
        if (it == j.end()) return;
        const auto w{where + std::string{key} + "."};
        read(*it, "limit", out.limit, w);
        read(*it, "usedMin", out.used_min, w);
        read(*it, "usedMax", out.used_max, w);
    }

    void read(const json& j, std::string_view key, SourceProfile& out, const std::string& where) {
        const auto it{j.find(key)};
        if (it == j.end()) return;
        const auto w{where + std::string{key} + "."};
        read(*it, "compilers", out.compilers, w);
        read(*it, "lines", out.lines, w);
        read(*it, "runs", out.runs, w);
        read(*it, "runsZero", out.runs_zero, w);
        read(*it, "libraries", out.libraries, w);
        read(*it, "missingSource", out.missing_source, w);
    }

    json range_json(const Range& r) { return json::array({r.min, r.max}); }
    json lognormal_json(const LogNormal& l) { return {{"median", l.median}, {"sigma", l.sigma}}; }
    json gas_json(const Gas& g) {
        return {{"limit", lognormal_json(g.limit)}, {"usedMin", g.used_min}, {"usedMax", g.used_max}};
    }
    json source_json(const SourceProfile& s) {
        return {{"compilers", s.compilers},     {"lines", lognormal_json(s.lines)},
                {"runs", lognormal_json(s.runs)}, {"runsZero", s.runs_zero},
                {"libraries", s.libraries},     {"missingSource", s.missing_source}};
    }

    constexpr std::uint64_t kFirstBlock{4'000'000};
    constexpr std::uint64_t kFirstTimestamp{1'499'000'000};
    constexpr std::uint64_t kSecondsPerBlock{14};
    constexpr double kMicroEtherPerEther{1e6};

    class Generator {
      public:
        Generator(const SynthConfig& config) : config_{config}, rng_{config.seed} {}

        Corpus run() {
            Corpus corpus;
            const auto hp_weights{weights(config_.honeypots)};
            const auto wl_weights{weights(config_.workloads)};
            hp_clones_.resize(config_.honeypots.size());
            wl_clones_.resize(config_.workloads.size());

            for (std::size_t i{0}; i < config_.n_honeypots; ++i) {
                const auto a{rng_.pick(hp_weights)};
                auto b{honeypot(config_.honeypots[a], a, false)};
                b.label = HoneypotLabel::honeypot(config_.honeypots[a].technique);
                corpus.bundles.push_back(std::move(b));
            }
            for (std::size_t i{0}; i < config_.n_non_honeypots; ++i) {
                const auto a{rng_.pick(wl_weights)};
                auto b{workload(config_.workloads[a], a)};
                b.label = HoneypotLabel::negative();
                corpus.bundles.push_back(std::move(b));
            }
            for (std::size_t i{0}; i < config_.n_unlabeled; ++i) {
                const auto a{rng_.pick(wl_weights)};
                corpus.bundles.push_back(workload(config_.workloads[a], a));
            }
            for (std::size_t i{0}; i < config_.n_planted; ++i) {
                const auto a{rng_.pick(hp_weights)};
                auto b{honeypot(config_.honeypots[a], a, true)};
                corpus.planted.push_back(b.contract.address);
                corpus.bundles.push_back(std::move(b));
            }
            rng_.shuffle(std::span{corpus.bundles});
            return corpus;
        }

      private:
        template <typename A>
        static std::vector<double> weights(const std::vector<A>& archetypes) {
            std::vector<double> w;
            for (const auto& a : archetypes) w.push_back(a.weight);
            return w;
        }

        std::string random_hex(std::size_t n) {
            Bytes bytes(n);
            for (auto& b : bytes) b = static_cast<std::uint8_t>(rng_.below(256));
            return to_hex(bytes);
        }

        Address address() { return random_hex(20); }
        TxHash hash() { return random_hex(32); }

        std::int64_t sample(const Range& r) { return rng_.range(r.min, r.max); }
        double sample(const LogNormal& l) { return l.median * std::exp(l.sigma * rng_.normal()); }

        static Wei ether(double amount) {
            const auto micro{static_cast<std::uint64_t>(std::max(1.0, std::round(amount * kMicroEtherPerEther)))};
            return Wei{micro} * Wei{1'000'000'000'000ULL};
        }

        template <typename T>
        T pick_key(const std::map<T, double>& weighted) {
            std::vector<double> w;
            for (const auto& [_, v] : weighted) w.push_back(v);
            auto it{weighted.begin()};
            std::advance(it, static_cast<std::ptrdiff_t>(rng_.pick(w)));
            return it->first;
        }

        Bytes bytecode(std::vector<Bytes>& clones, bool allow_empty) {
            if (allow_empty && rng_.chance(config_.noise.empty_bytecode)) return {};
            if (!clones.empty() && rng_.chance(config_.noise.clone)) return clones[rng_.below(clones.size())];
            Bytes code(static_cast<std::size_t>(rng_.range(64, 600)));
            for (auto& b : code) b = static_cast<std::uint8_t>(rng_.below(256));
            clones.push_back(code);
            return code;
        }

        SourceInfo source(const SourceProfile& p) {
            if (rng_.chance(p.missing_source) || p.compilers.empty()) return {};
            SourceInfo s;
            s.has_source_code = true;
            s.source_line_count = static_cast<std::uint64_t>(std::max(1.0, std::round(sample(p.lines))));
            s.compiler_version_raw = pick_key(p.compilers);
            const auto v{parse_compiler_version(s.compiler_version_raw)};
            s.compiler_minor = v.minor;
            s.compiler_patch = v.patch;
            s.compiler_runs = rng_.chance(p.runs_zero) ? 0 : static_cast<std::uint64_t>(std::max(1.0, std::round(sample(p.runs))));
            if (!p.libraries.empty()) {
                auto lib{pick_key(p.libraries)};
                if (!lib.empty()) s.library = std::move(lib);
            }
            return s;
        }

        // Per-contract clock; every transaction lands in a later block.
        struct Clock {
            std::uint64_t block;
        };

        void advance(Clock& clock, double mean_gap) {
            const double gap{-mean_gap * std::log(1.0 - rng_.uniform())};
            clock.block += 1 + static_cast<std::uint64_t>(gap);
        }

        NormalTransaction normal(const Clock& clock, const Address& from, const Address& to, const Wei& value,
                                 const Gas& gas, bool error, double gas_scale = 1.0) {
            NormalTransaction tx;
            tx.hash = hash();
            tx.block_number = clock.block;
            tx.transaction_index = rng_.below(150);
            tx.timestamp = kFirstTimestamp + (clock.block - kFirstBlock) * kSecondsPerBlock;
            tx.from = from;
            tx.to = to;
            tx.value = value;
            tx.gas = static_cast<std::uint64_t>(std::max(21000.0, std::round(sample(gas.limit) * gas_scale)));
            const double used{error ? rng_.uniform(0.5, 1.0) : rng_.uniform(gas.used_min, gas.used_max)};
            tx.gas_used = std::min(tx.gas, std::max<std::uint64_t>(21000, static_cast<std::uint64_t>(tx.gas * used)));
            tx.is_error = error;
            return tx;
        }

        static InternalTransaction transfer(const TxHash& parent, const Address& from, const Address& to,
                                            const Wei& value) {
            InternalTransaction itx;
            itx.parent_hash = parent;
            itx.from = from;
            itx.to = to;
            itx.value = value;
            itx.gas = 2300;
            itx.gas_used = 0;
            return itx;
        }

        ContractBundle start(const Address& creator, Bytes code, SourceInfo src, Clock& clock, const Gas& gas,
                             const Wei& value) {
            ContractBundle b;
            b.contract.address = address();
            b.contract.creator = creator;
            b.contract.bytecode = std::move(code);
            b.contract.creation_block = clock.block;
            auto tx{normal(clock, creator, "", value, gas, false, 12.0)};
            tx.contract_address = b.contract.address;
            b.contract.creation_tx_hash = tx.hash;
            b.normals.push_back(std::move(tx));
            b.source = std::move(src);
            return b;
        }

        ContractBundle honeypot(const HoneypotArchetype& a, std::size_t index, bool planted) {
            const auto& noise{config_.noise};
            const Address creator{address()};
            auto code{planted ? Bytes{} : bytecode(hp_clones_[index], false)};
            if (code.empty()) {
                code.resize(static_cast<std::size_t>(rng_.range(64, 600)));
                for (auto& byte : code) byte = static_cast<std::uint8_t>(rng_.below(256));
            }
            auto src{source(a.source)};
            if (planted && !src.has_source_code) {
                while (!src.has_source_code) src = source(a.source);
            }
            Clock clock{static_cast<std::uint64_t>(rng_.range(kFirstBlock, 7'000'000))};

            const bool omit_deposit{!planted && rng_.chance(noise.omit_creator_deposit)};
            const Wei deposit{ether(sample(a.deposit_ether))};
            const bool at_creation{!omit_deposit && rng_.chance(a.deposit_at_creation)};
            auto b{start(creator, std::move(code), std::move(src), clock, a.gas, at_creation ? deposit : Wei{0})};
            const Address& contract{b.contract.address};
            Wei balance{at_creation ? deposit : Wei{0}};

            if (!omit_deposit && !at_creation) {
                advance(clock, a.block_gap);
                b.normals.push_back(normal(clock, creator, contract, deposit, a.gas, false));
                balance += deposit;
            }

            // 'v' victim deposit, 'p' probe, 'e' errored call, 'c' creator call
            std::string plan;
            if (rng_.chance(noise.victim_deposit)) plan.append(static_cast<std::size_t>(sample(a.victim_deposits)), 'v');
            plan.append(static_cast<std::size_t>(sample(a.probe_calls)), 'p');
            plan.append(static_cast<std::size_t>(sample(a.errored_calls)), 'e');
            plan.append(static_cast<std::size_t>(sample(a.creator_calls)), 'c');
            rng_.shuffle(std::span{plan});

            const bool failed{!planted && rng_.chance(noise.failed_honeypot)};
            std::vector<Address> victims;
            const auto victim = [&] {
                if (!victims.empty() && rng_.chance(0.5)) return victims[rng_.below(victims.size())];
                victims.push_back(address());
                return victims.back();
            };
            for (const char step : plan) {
                advance(clock, a.block_gap);
                switch (step) {
                    case 'v': {
                        const Wei amount{ether(sample(a.victim_ether))};
                        b.normals.push_back(normal(clock, victim(), contract, amount, a.gas, false));
                        balance += amount;
                        break;
                    }
                    case 'p': b.normals.push_back(normal(clock, victim(), contract, 0, a.gas, false)); break;
                    case 'e': {
                        const Wei amount{rng_.chance(0.5) ? ether(sample(a.victim_ether)) : Wei{0}};
                        b.normals.push_back(normal(clock, victim(), contract, amount, a.gas, true));
                        break;
                    }
                    default: b.normals.push_back(normal(clock, creator, contract, 0, a.gas, false)); break;
                }
            }

            if (failed && balance > 0) {
                advance(clock, a.block_gap);
                const auto& tx{b.normals.emplace_back(normal(clock, victim(), contract, 0, a.gas, false))};
                const Wei payout{balance / 2};
                b.internals.push_back(transfer(tx.hash, contract, tx.from, payout));
                balance -= payout;
            }
            if (balance > 0 && (planted || rng_.chance(a.withdraw))) {
                advance(clock, a.block_gap);
                const auto& tx{b.normals.emplace_back(normal(clock, creator, contract, 0, a.gas, false))};
                b.internals.push_back(transfer(tx.hash, contract, creator, balance));
            }
            return b;
        }

        ContractBundle workload(const WorkloadArchetype& a, std::size_t index) {
            const Address creator{address()};
            auto code{bytecode(wl_clones_[index], true)};
            auto src{source(a.source)};
            Clock clock{static_cast<std::uint64_t>(rng_.range(kFirstBlock, 7'000'000))};
            const Wei seed_value{rng_.chance(a.creator_value_prob) ? ether(sample(a.value_ether)) : Wei{0}};
            auto b{start(creator, std::move(code), std::move(src), clock, a.gas, seed_value)};
            const Address contract{b.contract.address};
            Wei balance{seed_value};

            const auto calls{static_cast<std::size_t>(std::max(0.0, std::round(sample(a.tx_count)) - 1.0))};
            std::vector<Address> users;
            const auto user = [&] {
                if (users.empty() || rng_.chance(a.distinct_senders)) {
                    users.push_back(address());
                    return users.back();
                }
                return users[rng_.below(users.size())];
            };
            for (std::size_t i{0}; i < calls; ++i) {
                advance(clock, a.block_gap);
                const bool by_creator{rng_.chance(a.creator_share)};
                const Address from{by_creator ? creator : user()};
                const bool pays{rng_.chance(by_creator ? a.creator_value_prob : a.value_prob)};
                const Wei value{pays ? ether(sample(a.value_ether)) : Wei{0}};
                const bool error{rng_.chance(a.error_rate)};
                const auto& tx{b.normals.emplace_back(normal(clock, from, contract, value, a.gas, error))};
                if (error) continue;
                balance += value;
                if (by_creator && balance > 0 && rng_.chance(a.creator_withdraw)) {
                    b.internals.push_back(transfer(tx.hash, contract, creator, balance));
                    balance = 0;
                } else if (balance > 0 && rng_.chance(a.payout_prob)) {
                    const Wei amount{balance * static_cast<unsigned>(rng_.range(200, 1000)) / 1000U};
                    const Address to{rng_.chance(a.payout_to_sender) ? from : user()};
                    b.internals.push_back(transfer(tx.hash, contract, to, amount));
                    balance -= amount;
                }
                if (rng_.chance(a.internal_create)) {
                    InternalTransaction itx;
                    itx.parent_hash = tx.hash;
                    itx.from = contract;
                    itx.contract_address = address();
                    itx.gas = 400000;
                    itx.gas_used = 250000;
                    b.internals.push_back(std::move(itx));
                }
            }
            return b;
        }

        const SynthConfig& config_;
        Rng rng_;
        std::vector<std::vector<Bytes>> hp_clones_;
        std::vector<std::vector<Bytes>> wl_clones_;
    };

    void check_profile(const SourceProfile& s, const std::string& where, std::vector<std::string>& bad) {
        for (const auto& [k, w] : s.compilers) {
            if (!(w >= 0)) bad.push_back(where + "source.compilers." + k + " must be >= 0");
        }
        for (const auto& [k, w] : s.libraries) {
            if (!(w >= 0)) bad.push_back(where + "source.libraries." + k + " must be >= 0");
        }
        if (!(s.runs_zero >= 0 && s.runs_zero <= 1)) bad.push_back(where + "source.runsZero must be in [0,1]");
        if (!(s.missing_source >= 0 && s.missing_source <= 1)) bad.push_back(where + "source.missingSource must be in [0,1]");
        if (!(s.lines.median > 0)) bad.push_back(where + "source.lines.median must be > 0");
    }

    void check_range(const Range& r, const std::string& name, std::vector<std::string>& bad) {
        if (r.min < 0 || r.max < r.min) bad.push_back(name + " must satisfy 0 <= min <= max");
    }

    void check_prob(double p, const std::string& name, std::vector<std::string>& bad) {
        if (!(p >= 0 && p <= 1)) bad.push_back(name + " must be in [0,1]");
    }

    void check_gas(const Gas& g, const std::string& where, std::vector<std::string>& bad) {
        if (!(g.limit.median > 0)) bad.push_back(where + "gas.limit.median must be > 0");
        if (!(g.used_min > 0 && g.used_min <= g.used_max && g.used_max <= 1)) {
            bad.push_back(where + "gas needs 0 < usedMin <= usedMax <= 1");
        }
    }

}  // namespace

void SynthConfig::validate() const {
    std::vector<std::string> bad;
    check_prob(noise.omit_creator_deposit, "noise.omitCreatorDeposit", bad);
    check_prob(noise.victim_deposit, "noise.victimDeposit", bad);
    check_prob(noise.failed_honeypot, "noise.failedHoneypot", bad);
    check_prob(noise.empty_bytecode, "noise.emptyBytecode", bad);
    check_prob(noise.clone, "noise.clone", bad);
    const auto check_weights = [&](const auto& list, const std::string& name, bool needed) {
        if (list.empty()) {
            if (needed) bad.push_back(name + " must not be empty");
            return;
        }
        double sum{0};
        for (const auto& a : list) {
            if (!(a.weight >= 0)) bad.push_back(name + "." + a.name + ".weight must be >= 0");
            sum += a.weight;
        }
        if (std::abs(sum - 1.0) > 1e-9) bad.push_back(name + " weights must sum to 1");
    };
    check_weights(honeypots, "honeypotArchetypes", n_honeypots + n_planted > 0);
    check_weights(workloads, "workloadArchetypes", n_non_honeypots + n_unlabeled > 0);
    for (const auto& a : honeypots) {
        const auto w{"honeypotArchetypes." + a.name + "."};
        if (a.technique == Technique::kNone) bad.push_back(w + "technique must name a honeypot technique");
        check_range(a.victim_deposits, w + "victimDeposits", bad);
        check_range(a.probe_calls, w + "probeCalls", bad);
        check_range(a.errored_calls, w + "erroredCalls", bad);
        check_range(a.creator_calls, w + "creatorCalls", bad);
        check_prob(a.deposit_at_creation, w + "depositAtCreation", bad);
        check_prob(a.withdraw, w + "withdraw", bad);
        if (!(a.deposit_ether.median > 0) || !(a.victim_ether.median > 0)) bad.push_back(w + "ether medians must be > 0");
        if (!(a.block_gap >= 0)) bad.push_back(w + "blockGap must be >= 0");
        check_gas(a.gas, w, bad);
        check_profile(a.source, w, bad);
    }
    for (const auto& a : workloads) {
        const auto w{"workloadArchetypes." + a.name + "."};
        if (!(a.tx_count.median > 0)) bad.push_back(w + "txCount.median must be > 0");
        for (const auto& [p, n] : {std::pair{a.creator_share, "creatorShare"}, {a.distinct_senders, "distinctSenders"},
                                   {a.value_prob, "valueProb"}, {a.creator_value_prob, "creatorValueProb"},
                                   {a.error_rate, "errorRate"}, {a.payout_prob, "payoutProb"},
                                   {a.payout_to_sender, "payoutToSender"}, {a.creator_withdraw, "creatorWithdraw"},
                                   {a.internal_create, "internalCreate"}}) {
            check_prob(p, w + n, bad);
        }
        if (!(a.value_ether.median > 0)) bad.push_back(w + "valueEther.median must be > 0");
        if (!(a.block_gap >= 0)) bad.push_back(w + "blockGap must be >= 0");
        check_gas(a.gas, w, bad);
        check_profile(a.source, w, bad);
    }
    if (bad.empty()) return;
    std::string msg{"invalid synth config:"};
    for (const auto& b : bad) msg += " " + b + ";";
    throw InputError{msg};
}

SynthConfig SynthConfig::from_json(const json& j) {
    if (!j.is_object()) throw ParseError{"config", "expected a JSON object"};
    SynthConfig c;
    read(j, "seed", c.seed, "");
    read(j, "nHoneypots", c.n_honeypots, "");
    read(j, "nNonHoneypots", c.n_non_honeypots, "");
    read(j, "nUnlabeled", c.n_unlabeled, "");
    read(j, "nPlanted", c.n_planted, "");
    if (const auto it{j.find("noise")}; it != j.end()) {
        read(*it, "omitCreatorDeposit", c.noise.omit_creator_deposit, "noise.");
        read(*it, "victimDeposit", c.noise.victim_deposit, "noise.");
        read(*it, "failedHoneypot", c.noise.failed_honeypot, "noise.");
        read(*it, "emptyBytecode", c.noise.empty_bytecode, "noise.");
        read(*it, "clone", c.noise.clone, "noise.");
    }
    if (const auto it{j.find("honeypotArchetypes")}; it != j.end()) {
        for (const auto& e : *it) {
            HoneypotArchetype a;
            read(e, "name", a.name, "honeypotArchetypes.");
            const auto w{"honeypotArchetypes." + a.name + "."};
            std::string technique;
            read(e, "technique", technique, w);
            const auto t{parse_technique(technique)};
            if (!t) throw ParseError{w + "technique", "unknown technique '" + technique + "'"};
            a.technique = *t;
            read(e, "weight", a.weight, w);
            read(e, "depositEther", a.deposit_ether, w);
            read(e, "victimEther", a.victim_ether, w);
            read(e, "victimDeposits", a.victim_deposits, w);
            read(e, "probeCalls", a.probe_calls, w);
            read(e, "erroredCalls", a.errored_calls, w);
            read(e, "creatorCalls", a.creator_calls, w);
            read(e, "depositAtCreation", a.deposit_at_creation, w);
            read(e, "withdraw", a.withdraw, w);
            read(e, "blockGap", a.block_gap, w);
            read(e, "gas", a.gas, w);
            read(e, "source", a.source, w);
            c.honeypots.push_back(std::move(a));
        }
    }
    if (const auto it{j.find("workloadArchetypes")}; it != j.end()) {
        for (const auto& e : *it) {
            WorkloadArchetype a;
            read(e, "name", a.name, "workloadArchetypes.");
            const auto w{"workloadArchetypes." + a.name + "."};
            read(e, "weight", a.weight, w);
            read(e, "txCount", a.tx_count, w);
            read(e, "creatorShare", a.creator_share, w);
            read(e, "distinctSenders", a.distinct_senders, w);
            read(e, "valueProb", a.value_prob, w);
            read(e, "valueEther", a.value_ether, w);
            read(e, "creatorValueProb", a.creator_value_prob, w);
            read(e, "errorRate", a.error_rate, w);
            read(e, "payoutProb", a.payout_prob, w);
            read(e, "payoutToSender", a.payout_to_sender, w);
            read(e, "creatorWithdraw", a.creator_withdraw, w);
            read(e, "internalCreate", a.internal_create, w);
            read(e, "blockGap", a.block_gap, w);
            read(e, "gas", a.gas, w);
            read(e, "source", a.source, w);
            c.workloads.push_back(std::move(a));
        }
    }
    return c;
}

json SynthConfig::to_json() const {
    json hp = json::array();
    for (const auto& a : honeypots) {
        hp.push_back({{"name", a.name},
                      {"technique", technique_token(a.technique)},
                      {"weight", a.weight},
                      {"depositEther", lognormal_json(a.deposit_ether)},
                      {"victimEther", lognormal_json(a.victim_ether)},
                      {"victimDeposits", range_json(a.victim_deposits)},
                      {"probeCalls", range_json(a.probe_calls)},
                      {"erroredCalls", range_json(a.errored_calls)},
                      {"creatorCalls", range_json(a.creator_calls)},
                      {"depositAtCreation", a.deposit_at_creation},
                      {"withdraw", a.withdraw},
                      {"blockGap", a.block_gap},
                      {"gas", gas_json(a.gas)},
                      {"source", source_json(a.source)}});
    }
    json wl = json::array();
    for (const auto& a : workloads) {
        wl.push_back({{"name", a.name},
                      {"weight", a.weight},
                      {"txCount", lognormal_json(a.tx_count)},
                      {"creatorShare", a.creator_share},
                      {"distinctSenders", a.distinct_senders},
                      {"valueProb", a.value_prob},
                      {"valueEther", lognormal_json(a.value_ether)},
                      {"creatorValueProb", a.creator_value_prob},
                      {"errorRate", a.error_rate},
                      {"payoutProb", a.payout_prob},
                      {"payoutToSender", a.payout_to_sender},
                      {"creatorWithdraw", a.creator_withdraw},
                      {"internalCreate", a.internal_create},
                      {"blockGap", a.block_gap},
                      {"gas", gas_json(a.gas)},
                      {"source", source_json(a.source)}});
    }
    return {{"seed", seed},
            {"nHoneypots", n_honeypots},
            {"nNonHoneypots", n_non_honeypots},
            {"nUnlabeled", n_unlabeled},
            {"nPlanted", n_planted},
            {"noise",
             {{"omitCreatorDeposit", noise.omit_creator_deposit},
              {"victimDeposit", noise.victim_deposit},
              {"failedHoneypot", noise.failed_honeypot},
              {"emptyBytecode", noise.empty_bytecode},
              {"clone", noise.clone}}},
            {"honeypotArchetypes", std::move(hp)},
            {"workloadArchetypes", std::move(wl)}};
}

SynthConfig SynthConfig::load(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw InputError{"cannot read synth config " + path.string()};
    try {
        return from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ParseError{path.string(), e.what()};
    }
}

const json& default_config_json() {
    static const json j = json::parse(kSynthDefaultConfig);
    return j;
}

SynthConfig default_config() { return SynthConfig::from_json(default_config_json()); }

Corpus generate(const SynthConfig& config) {
    config.validate();
    return Generator{config}.run();
}

}  // namespace hpscan::synth
