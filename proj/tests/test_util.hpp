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

#include <cstdio>
#include <string>

#include <hpscan/types.hpp>

namespace hpscan::test {

// Deterministic, well-formed identifiers: addr(1) == "0x000...001".
inline Address addr(unsigned n) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "0x%040x", n);
    return buf;
}

inline TxHash txhash(unsigned n) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "0x%064x", n);
    return buf;
}

inline Wei ether(unsigned long long n) { return Wei{n} * Wei{1'000'000'000'000'000'000ULL}; }

inline NormalTransaction call(unsigned id, const Address& from, const Address& to, Wei value = 0,
                              std::uint64_t block = 100, bool error = false) {
    NormalTransaction tx;
    tx.hash = txhash(id);
    tx.block_number = block;
    tx.timestamp = 1'500'000'000 + block * 14;
    tx.from = from;
    tx.to = to;
    tx.value = value;
    tx.gas = 100000;
    tx.gas_used = 60000;
    tx.is_error = error;
    return tx;
}

inline NormalTransaction creation(unsigned id, const Address& creator, const Address& contract, Wei value = 0,
                                  std::uint64_t block = 100) {
    auto tx{call(id, creator, "", value, block)};
    tx.contract_address = contract;
    return tx;
}

inline InternalTransaction transfer(const TxHash& parent, const Address& from, const Address& to, Wei value,
                                    bool error = false) {
    InternalTransaction itx;
    itx.parent_hash = parent;
    itx.from = from;
    itx.to = to;
    itx.value = value;
    itx.gas = 2300;
    itx.is_error = error;
    return itx;
}

}  // namespace hpscan::test
