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

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <hpscan/types.hpp>

namespace hpscan::etherscan {

using Query = std::map<std::string, std::string>;

struct Response {
    int status{200};
    std::string body;
};

// One GET against an explorer-compatible `/api` endpoint. Implementations must
// be callable from several threads at once.
class Transport {
  public:
    virtual ~Transport() = default;
    // Throws FetchError(retryable = true) on connection failures.
    virtual Response get(const Query& query) = 0;
};

// Talks to a live explorer, e.g. "https://api.etherscan.io/api".
class HttpTransport final : public Transport {
  public:
    explicit HttpTransport(std::string base_url, std::chrono::seconds timeout = std::chrono::seconds{30});
    Response get(const Query& query) override;

  private:
    std::string origin_;
    std::string path_;
    std::chrono::seconds timeout_;
};

// Serves explorer-shaped responses from `<dir>/<address>.json`. Each fixture is
//   {"txlist": [...], "txlistinternal": [...], "sourcecode": {...}, "code": "0x.."}
// with records in the explorer's own field layout. Pagination parameters are
// honoured, so the client's paging path runs unchanged.
class FixtureTransport final : public Transport {
  public:
    explicit FixtureTransport(std::filesystem::path dir);
    Response get(const Query& query) override;

  private:
    std::filesystem::path dir_;
};

// Spaces out request starts to at most `per_second`; shared across threads.
class RateLimiter {
  public:
    explicit RateLimiter(double per_second);
    void acquire();

  private:
    std::mutex mutex_;
    std::chrono::steady_clock::duration interval_;
    std::chrono::steady_clock::time_point next_;
};

struct ClientConfig {
    std::string base_url{"https://api.etherscan.io/api"};
    // Filled from ETHERSCAN_API_KEY by from_environment().
    std::string api_key;
    double requests_per_second{5.0};
    std::size_t page_size{10'000};
    // Explorers refuse page * offset beyond this; the client then restarts
    // paging from the last block seen.
    std::size_t result_window{10'000};
    unsigned max_retries{5};
    std::chrono::milliseconds initial_backoff{500};
    std::chrono::milliseconds max_backoff{30'000};
    unsigned concurrency{4};
    std::function<void(std::chrono::milliseconds)> sleep;

    [[nodiscard]] static ClientConfig from_environment();
};

struct FetchOutcome {
    Address address;
    std::optional<ContractBundle> bundle;
    std::string error;
};

class Client {
  public:
    Client(ClientConfig config, std::shared_ptr<Transport> transport);

    // All pages of normal and internal transactions, merged and deduplicated.
    // Unknown addresses return a bundle with found == false.
    [[nodiscard]] ContractBundle fetch_contract_bundle(const Address& address);

    // Bounded-parallel fetch; results keep input order, failures are captured
    // per address.
    [[nodiscard]] std::vector<FetchOutcome> fetch_many(std::span<const Address> addresses);

  private:
    // Explorer "result" field, with retries and backoff. The explorer's
    // "no records" answer comes back as an empty array.
    [[nodiscard]] nlohmann::json call(Query query);
    [[nodiscard]] std::vector<nlohmann::json> paged(const std::string& action, const Address& address);

    ClientConfig config_;
    std::shared_ptr<Transport> transport_;
    RateLimiter limiter_;
};

}  // namespace hpscan::etherscan
