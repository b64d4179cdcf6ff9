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

#include <hpscan/etherscan.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <set>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <hpscan/chain_data.hpp>
#include <hpscan/error.hpp>

namespace hpscan::etherscan {

using nlohmann::json;

namespace {

    std::string get_string(const json& obj, const char* key, const std::string& path) {
        const auto it{obj.find(key)};
        if (it == obj.end()) throw ParseError{path + "." + key, "missing"};
        if (!it->is_string()) throw ParseError{path + "." + key, "expected a string"};
        return it->get<std::string>();
    }

    std::uint64_t get_u64(const json& obj, const char* key, const std::string& path, bool empty_is_zero = false) {
        const auto s{get_string(obj, key, path)};
        if (s.empty() && empty_is_zero) return 0;
        return parse_u64(s, path + "." + key);
    }

    bool get_flag(const json& obj, const char* key, const std::string& path) {
        const auto s{get_string(obj, key, path)};
        if (s == "0" || s.empty()) return false;
        if (s == "1") return true;
        throw ParseError{path + "." + key, "expected \"0\" or \"1\", got '" + s + "'"};
    }

    NormalTransaction parse_normal(const json& r, const std::string& path) {
        if (!r.is_object()) throw ParseError{path, "expected an object"};
        NormalTransaction tx;
        tx.hash = normalize_hash(get_string(r, "hash", path), path + ".hash");
        tx.block_number = get_u64(r, "blockNumber", path);
        tx.transaction_index = get_u64(r, "transactionIndex", path, true);
        tx.timestamp = get_u64(r, "timeStamp", path);
        tx.from = normalize_address(get_string(r, "from", path), path + ".from");
        tx.to = normalize_address(get_string(r, "to", path), path + ".to");
        tx.contract_address = normalize_address(get_string(r, "contractAddress", path), path + ".contractAddress");
        tx.value = parse_wei(get_string(r, "value", path), path + ".value");
        tx.gas = get_u64(r, "gas", path);
        tx.gas_used = get_u64(r, "gasUsed", path);
        tx.is_error = get_flag(r, "isError", path);
        return tx;
    }

    InternalTransaction parse_internal(const json& r, const std::string& path) {
        if (!r.is_object()) throw ParseError{path, "expected an object"};
        InternalTransaction tx;
        tx.parent_hash = normalize_hash(get_string(r, "hash", path), path + ".hash");
        tx.from = normalize_address(get_string(r, "from", path), path + ".from");
        tx.to = normalize_address(get_string(r, "to", path), path + ".to");
        tx.contract_address = normalize_address(get_string(r, "contractAddress", path), path + ".contractAddress");
        tx.value = parse_wei(get_string(r, "value", path), path + ".value");
        tx.gas = get_u64(r, "gas", path, true);
        tx.gas_used = get_u64(r, "gasUsed", path, true);
        tx.is_error = get_flag(r, "isError", path);
        return tx;
    }

    // Internal transactions have no hash of their own.
    std::string internal_identity(const json& r) {
        std::string key;
        for (const char* k : {"hash", "traceId", "from", "to", "contractAddress", "value", "gas", "gasUsed", "isError"}) {
            const auto it{r.find(k)};
            key += it != r.end() && it->is_string() ? it->get<std::string>() : std::string{};
            key += '|';
        }
        return key;
    }

    bool mentions_rate_limit(const json& result) {
        if (!result.is_string()) return false;
        std::string s{result.get<std::string>()};
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        return s.find("rate limit") != std::string::npos;
    }

    Response json_response(const json& body) { return {200, body.dump()}; }

    json no_records() { return {{"status", "0"}, {"message", "No transactions found"}, {"result", json::array()}}; }

    json unverified_source() {
        return json::array({{{"SourceCode", ""}, {"CompilerVersion", ""}, {"Runs", "0"}, {"Library", ""}}});
    }

}  // namespace

HttpTransport::HttpTransport(std::string base_url, std::chrono::seconds timeout) : timeout_{timeout} {
    const auto scheme{base_url.find("://")};
    const auto path_start{base_url.find('/', scheme == std::string::npos ? 0 : scheme + 3)};
    if (path_start == std::string::npos) {
        origin_ = std::move(base_url);
        path_ = "/";
    } else {
        origin_ = base_url.substr(0, path_start);
        path_ = base_url.substr(path_start);
    }
}

Response HttpTransport::get(const Query& query) {
    httplib::Client client{origin_};
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    const httplib::Params params(query.begin(), query.end());
    auto result{client.Get(path_, params, httplib::Headers{})};
    if (!result) throw FetchError{"request to " + origin_ + " failed: " + httplib::to_string(result.error()), true};
    return {result->status, result->body};
}

FixtureTransport::FixtureTransport(std::filesystem::path dir) : dir_{std::move(dir)} {}

Response FixtureTransport::get(const Query& query) {
    const auto param = [&](const char* key, std::string fallback = {}) {
        const auto it{query.find(key)};
        return it == query.end() ? fallback : it->second;
    };
    const std::string module{param("module")};
    const std::string action{param("action")};
    const std::string address{param("address")};

    json fixture = json::object();
    const auto file{dir_ / (address + ".json")};
    if (std::ifstream in{file}; in) {
        try {
            fixture = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ParseError{file.string(), e.what()};
        }
    }

    if (module == "account" && (action == "txlist" || action == "txlistinternal")) {
        if (!fixture.contains(action) || fixture[action].empty()) return json_response(no_records());
        const auto start_block{std::stoull(param("startblock", "0"))};
        const auto end_block{std::stoull(param("endblock", "99999999"))};
        std::vector<json> records;
        for (const auto& r : fixture[action]) {
            const auto block{std::stoull(r.value("blockNumber", "0"))};
            if (block >= start_block && block <= end_block) records.push_back(r);
        }
        std::stable_sort(records.begin(), records.end(), [](const json& a, const json& b) {
            return std::stoull(a.value("blockNumber", "0")) < std::stoull(b.value("blockNumber", "0"));
        });
        const auto page{std::max<std::size_t>(1, std::stoull(param("page", "1")))};
        const auto offset{std::stoull(param("offset", "10000"))};
        const std::size_t begin{std::min<std::size_t>(records.size(), (page - 1) * offset)};
        const std::size_t end{std::min<std::size_t>(records.size(), begin + offset)};
        if (begin == end) return json_response(no_records());
        json result = json::array();
        for (std::size_t i{begin}; i < end; ++i) result.push_back(records[i]);
        return json_response({{"status", "1"}, {"message", "OK"}, {"result", std::move(result)}});
    }
    if (module == "contract" && action == "getsourcecode") {
        json result = fixture.contains("sourcecode") ? json::array({fixture["sourcecode"]}) : unverified_source();
        return json_response({{"status", "1"}, {"message", "OK"}, {"result", std::move(result)}});
    }
    if (module == "proxy" && action == "eth_getCode") {
        return json_response({{"jsonrpc", "2.0"}, {"id", 1}, {"result", fixture.value("code", "0x")}});
    }
    return {400, R"({"status":"0","message":"NOTOK","result":"Unsupported action"})"};
}

RateLimiter::RateLimiter(double per_second)
    : interval_{per_second > 0 ? std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                     std::chrono::duration<double>{1.0 / per_second})
                               : std::chrono::steady_clock::duration::zero()},
      next_{std::chrono::steady_clock::now()} {}

void RateLimiter::acquire() {
    std::chrono::steady_clock::time_point slot;
    {
        std::lock_guard lock{mutex_};
        slot = std::max(std::chrono::steady_clock::now(), next_);
        next_ = slot + interval_;
    }
    std::this_thread::sleep_until(slot);
}

ClientConfig ClientConfig::from_environment() {
    ClientConfig config;
    if (const char* key{std::getenv("ETHERSCAN_API_KEY")}) config.api_key = key;
    return config;
}

Client::Client(ClientConfig config, std::shared_ptr<Transport> transport)
    : config_{std::move(config)}, transport_{std::move(transport)}, limiter_{config_.requests_per_second} {
    if (!config_.sleep) config_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
    if (config_.page_size == 0) throw InputError{"page size must be positive"};
}

json Client::call(Query query) {
    if (!config_.api_key.empty()) query["apikey"] = config_.api_key;
    std::string last_failure;
    for (unsigned attempt{0}; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) {
            auto delay{config_.initial_backoff * (1LL << std::min(attempt - 1, 20U))};
            config_.sleep(std::min<std::chrono::milliseconds>(delay, config_.max_backoff));
        }
        limiter_.acquire();
        Response response;
        try {
            response = transport_->get(query);
        } catch (const FetchError& e) {
            if (!e.retryable()) throw;
            last_failure = e.what();
            continue;
        }
        if (response.status == 429 || response.status >= 500) {
            last_failure = "HTTP " + std::to_string(response.status);
            continue;
        }
        if (response.status != 200) {
            throw FetchError{"HTTP " + std::to_string(response.status) + ": " + response.body, false};
        }
        json body;
        try {
            body = json::parse(response.body);
        } catch (const json::parse_error& e) {
            throw ParseError{"response", e.what()};
        }
        if (!body.is_object()) throw ParseError{"response", "expected an object"};
        if (body.contains("status") && body["status"] == "0") {
            const json& result = body.contains("result") ? body["result"] : json{};
            if (result.is_array() && result.empty()) return json::array();
            if (mentions_rate_limit(result)) {
                last_failure = result.get<std::string>();
                continue;
            }
            throw FetchError{body.value("message", "NOTOK") + ": " + (result.is_string() ? result.get<std::string>() : result.dump()),
                             false};
        }
        if (body.contains("error")) {
            if (mentions_rate_limit(body["error"].value("message", json{}))) {
                last_failure = "rate limited";
                continue;
            }
            throw FetchError{"explorer error: " + body["error"].dump(), false};
        }
        if (!body.contains("result")) throw ParseError{"result", "missing"};
        return body["result"];
    }
    throw FetchError{"giving up after " + std::to_string(config_.max_retries + 1) + " attempts: " + last_failure, true};
}

std::vector<json> Client::paged(const std::string& action, const Address& address) {
    std::vector<json> out;
    std::uint64_t start_block{0};
    std::size_t page{1};
    while (true) {
        const json result = call({{"module", "account"},
                                {"action", action},
                                {"address", address},
                                {"startblock", std::to_string(start_block)},
                                {"endblock", "99999999"},
                                {"page", std::to_string(page)},
                                {"offset", std::to_string(config_.page_size)},
                                {"sort", "asc"}});
        if (!result.is_array()) throw ParseError{action + ".result", "expected an array"};
        for (const auto& r : result) out.push_back(r);
        if (result.size() < config_.page_size) break;

        if ((page + 1) * config_.page_size > config_.result_window) {
            // Restart from the last block seen; duplicates are dropped by the caller.
            const auto last_block{get_u64(result.back(), "blockNumber", action + ".result")};
            if (last_block <= start_block) break;  // one block holds more than a window
            start_block = last_block;
            page = 1;
        } else {
            ++page;
        }
    }
    return out;
}

ContractBundle Client::fetch_contract_bundle(const Address& raw_address) {
    const Address address{normalize_address(raw_address, "address")};
    ContractBundle bundle;
    bundle.contract.address = address;

    std::set<TxHash> seen;
    const auto raw_normals = paged("txlist", address);
    for (std::size_t i{0}; i < raw_normals.size(); ++i) {
        auto tx{parse_normal(raw_normals[i], "txlist[" + std::to_string(i) + "]")};
        // Scope: transactions addressed to the contract, plus its creation.
        if (tx.to != address && tx.contract_address != address) continue;
        if (!seen.insert(tx.hash).second) continue;
        bundle.normals.push_back(std::move(tx));
    }
    std::sort(bundle.normals.begin(), bundle.normals.end(), [](const auto& a, const auto& b) {
        return std::tie(a.block_number, a.transaction_index) < std::tie(b.block_number, b.transaction_index);
    });

    std::set<std::string> seen_internal;
    const auto raw_internals = paged("txlistinternal", address);
    for (std::size_t i{0}; i < raw_internals.size(); ++i) {
        if (!seen_internal.insert(internal_identity(raw_internals[i])).second) continue;
        bundle.internals.push_back(parse_internal(raw_internals[i], "txlistinternal[" + std::to_string(i) + "]"));
    }

    for (const auto& tx : bundle.normals) {
        if (tx.is_creation() && tx.contract_address == address) {
            bundle.contract.creator = tx.from;
            bundle.contract.creation_block = tx.block_number;
            bundle.contract.creation_tx_hash = tx.hash;
            break;
        }
    }

    const json source = call({{"module", "contract"}, {"action", "getsourcecode"}, {"address", address}});
    if (source.is_array() && !source.empty()) {
        const json& s = source.front();
        const std::string runs{s.value("Runs", "")};
        bundle.source = make_source_info(s.value("SourceCode", ""), s.value("CompilerVersion", ""),
                                         runs.empty() ? 0 : parse_u64(runs, "getsourcecode.Runs"), s.value("Library", ""));
    }

    const json code = call({{"module", "proxy"}, {"action", "eth_getCode"}, {"address", address}, {"tag", "latest"}});
    if (!code.is_string()) throw ParseError{"eth_getCode.result", "expected a hex string"};
    bundle.contract.bytecode = from_hex(code.get<std::string>(), "eth_getCode.result");

    bundle.found = !bundle.normals.empty() || !bundle.internals.empty() || bundle.source.has_source_code ||
                   !bundle.contract.bytecode.empty();
    return bundle;
}

std::vector<FetchOutcome> Client::fetch_many(std::span<const Address> addresses) {
    std::vector<FetchOutcome> outcomes(addresses.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i{next++}; i < addresses.size(); i = next++) {
            outcomes[i].address = addresses[i];
            try {
                outcomes[i].bundle = fetch_contract_bundle(addresses[i]);
            } catch (const std::exception& e) {
                outcomes[i].error = e.what();
            }
        }
    };
    const auto n_workers{std::min<std::size_t>(std::max(1U, config_.concurrency), addresses.size())};
    std::vector<std::jthread> pool;
    for (std::size_t w{0}; w < n_workers; ++w) pool.emplace_back(worker);
    pool.clear();
    return outcomes;
}

}  // namespace hpscan::etherscan
