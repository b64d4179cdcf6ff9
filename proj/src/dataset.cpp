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

#include <hpscan/dataset.hpp>

#include <fstream>
#include <istream>
#include <ostream>

#include <hpscan/chain_data.hpp>
#include <hpscan/error.hpp>

namespace hpscan::dataset {

using nlohmann::json;

namespace {

    const json& field(const json& obj, const char* key, const std::string& path) {
        if (!obj.is_object()) throw ParseError{path, "expected an object"};
        const auto it{obj.find(key)};
        if (it == obj.end()) throw ParseError{path + "." + key, "missing"};
        return *it;
    }

    std::string str(const json& obj, const char* key, const std::string& path) {
        const auto& v{field(obj, key, path)};
        if (!v.is_string()) throw ParseError{path + "." + key, "expected a string"};
        return v.get<std::string>();
    }

    std::uint64_t u64(const json& obj, const char* key, const std::string& path) {
        return parse_u64(str(obj, key, path), path + "." + key);
    }

    bool boolean(const json& obj, const char* key, const std::string& path) {
        const auto& v{field(obj, key, path)};
        if (!v.is_boolean()) throw ParseError{path + "." + key, "expected a boolean"};
        return v.get<bool>();
    }

    json normal_to_json(const NormalTransaction& tx) {
        return {{"hash", tx.hash},
                {"blockNumber", std::to_string(tx.block_number)},
                {"transactionIndex", std::to_string(tx.transaction_index)},
                {"timeStamp", std::to_string(tx.timestamp)},
                {"from", tx.from},
                {"to", tx.to},
                {"contractAddress", tx.contract_address},
                {"value", to_decimal(tx.value)},
                {"gas", std::to_string(tx.gas)},
                {"gasUsed", std::to_string(tx.gas_used)},
                {"isError", tx.is_error}};
    }

    NormalTransaction normal_from_json(const json& j, const std::string& path) {
        NormalTransaction tx;
        tx.hash = normalize_hash(str(j, "hash", path), path + ".hash");
        tx.block_number = u64(j, "blockNumber", path);
        tx.transaction_index = u64(j, "transactionIndex", path);
        tx.timestamp = u64(j, "timeStamp", path);
        tx.from = normalize_address(str(j, "from", path), path + ".from");
        tx.to = normalize_address(str(j, "to", path), path + ".to");
        tx.contract_address = normalize_address(str(j, "contractAddress", path), path + ".contractAddress");
        tx.value = parse_wei(str(j, "value", path), path + ".value");
        tx.gas = u64(j, "gas", path);
        tx.gas_used = u64(j, "gasUsed", path);
        tx.is_error = boolean(j, "isError", path);
        return tx;
    }

    json internal_to_json(const InternalTransaction& tx) {
        return {{"parentHash", tx.parent_hash},
                {"from", tx.from},
                {"to", tx.to},
                {"contractAddress", tx.contract_address},
                {"value", to_decimal(tx.value)},
                {"gas", std::to_string(tx.gas)},
                {"gasUsed", std::to_string(tx.gas_used)},
                {"isError", tx.is_error}};
    }

    InternalTransaction internal_from_json(const json& j, const std::string& path) {
        InternalTransaction tx;
        tx.parent_hash = normalize_hash(str(j, "parentHash", path), path + ".parentHash");
        tx.from = normalize_address(str(j, "from", path), path + ".from");
        tx.to = normalize_address(str(j, "to", path), path + ".to");
        tx.contract_address = normalize_address(str(j, "contractAddress", path), path + ".contractAddress");
        tx.value = parse_wei(str(j, "value", path), path + ".value");
        tx.gas = u64(j, "gas", path);
        tx.gas_used = u64(j, "gasUsed", path);
        tx.is_error = boolean(j, "isError", path);
        return tx;
    }

    json header() { return {{"format", kFormat}, {"version", kVersion}}; }

    void check_header(const std::string& line) {
        json h;
        try {
            h = json::parse(line);
        } catch (const json::parse_error& e) {
            throw DatasetError{1, std::string{"unreadable header: "} + e.what()};
        }
        if (!h.is_object() || h.value("format", "") != kFormat) {
            throw DatasetError{1, "not an hpscan-raw dataset"};
        }
        if (!h.contains("version") || !h["version"].is_number_integer() || h["version"].get<int>() != kVersion) {
            throw DatasetError{1, "unsupported dataset version " + (h.contains("version") ? h["version"].dump() : "?") +
                                      ", expected " + std::to_string(kVersion)};
        }
    }

}  // namespace

json to_json(const ContractBundle& b) {
    json normals = json::array();
    for (const auto& tx : b.normals) normals.push_back(normal_to_json(tx));
    json internals = json::array();
    for (const auto& tx : b.internals) internals.push_back(internal_to_json(tx));

    json source{{"hasSourceCode", b.source.has_source_code},
                {"sourceLineCount", std::to_string(b.source.source_line_count)},
                {"compilerVersion", b.source.compiler_version_raw},
                {"compilerMinor", b.source.compiler_minor},
                {"compilerPatch", b.source.compiler_patch},
                {"compilerRuns", std::to_string(b.source.compiler_runs)},
                {"library", b.source.library ? json(*b.source.library) : json(nullptr)}};

    json label = nullptr;
    if (b.label) label = {{"isHoneypot", b.label->is_honeypot}, {"technique", technique_token(b.label->technique)}};

    return {{"contract",
             {{"address", b.contract.address},
              {"creator", b.contract.creator},
              {"bytecode", to_hex(b.contract.bytecode)},
              {"creationBlock", std::to_string(b.contract.creation_block)},
              {"creationTxHash", b.contract.creation_tx_hash}}},
            {"found", b.found},
            {"source", std::move(source)},
            {"normals", std::move(normals)},
            {"internals", std::move(internals)},
            {"label", std::move(label)}};
}

ContractBundle from_json(const json& record) {
    ContractBundle b;
    const auto& c{field(record, "contract", "record")};
    b.contract.address = normalize_address(str(c, "address", "contract"), "contract.address");
    b.contract.creator = normalize_address(str(c, "creator", "contract"), "contract.creator");
    b.contract.bytecode = from_hex(str(c, "bytecode", "contract"), "contract.bytecode");
    b.contract.creation_block = u64(c, "creationBlock", "contract");
    b.contract.creation_tx_hash = normalize_hash(str(c, "creationTxHash", "contract"), "contract.creationTxHash");
    b.found = boolean(record, "found", "record");

    const auto& s{field(record, "source", "record")};
    b.source.has_source_code = boolean(s, "hasSourceCode", "source");
    b.source.source_line_count = u64(s, "sourceLineCount", "source");
    b.source.compiler_version_raw = str(s, "compilerVersion", "source");
    b.source.compiler_minor = str(s, "compilerMinor", "source");
    b.source.compiler_patch = str(s, "compilerPatch", "source");
    b.source.compiler_runs = u64(s, "compilerRuns", "source");
    const auto& lib{field(s, "library", "source")};
    if (lib.is_string()) {
        b.source.library = lib.get<std::string>();
    } else if (!lib.is_null()) {
        throw ParseError{"source.library", "expected a string or null"};
    }

    const auto& normals{field(record, "normals", "record")};
    if (!normals.is_array()) throw ParseError{"normals", "expected an array"};
    for (std::size_t i{0}; i < normals.size(); ++i) {
        b.normals.push_back(normal_from_json(normals[i], "normals[" + std::to_string(i) + "]"));
    }
    const auto& internals{field(record, "internals", "record")};
    if (!internals.is_array()) throw ParseError{"internals", "expected an array"};
    for (std::size_t i{0}; i < internals.size(); ++i) {
        b.internals.push_back(internal_from_json(internals[i], "internals[" + std::to_string(i) + "]"));
    }

    const auto& label{field(record, "label", "record")};
    if (!label.is_null()) {
        const auto token{str(label, "technique", "label")};
        const auto technique{parse_technique(token)};
        if (!technique) throw ParseError{"label.technique", "unknown technique '" + token + "'"};
        const bool is_honeypot{boolean(label, "isHoneypot", "label")};
        if (is_honeypot != (*technique != Technique::kNone)) {
            throw ParseError{"label", "technique NONE must coincide with isHoneypot=false"};
        }
        b.label = HoneypotLabel{is_honeypot, *technique};
    }
    return b;
}

void write(std::ostream& out, std::span<const ContractBundle> bundles) {
    out << header().dump() << '\n';
    for (const auto& b : bundles) out << to_json(b).dump() << '\n';
}

std::vector<ContractBundle> read(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DatasetError{1, "missing header record"};
    check_header(line);

    std::vector<ContractBundle> out;
    std::size_t line_no{1};
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            throw DatasetError{line_no, std::string{"corrupt record: "} + e.what()};
        }
        try {
            out.push_back(from_json(record));
        } catch (const InputError& e) {
            throw DatasetError{line_no, e.what()};
        }
    }
    return out;
}

void store(const std::filesystem::path& path, std::span<const ContractBundle> bundles, bool append) {
    const bool existing{append && std::filesystem::exists(path) && std::filesystem::file_size(path) > 0};
    if (existing) {
        std::ifstream probe{path};
        std::string first;
        std::getline(probe, first);
        check_header(first);
        std::ofstream out{path, std::ios::app | std::ios::binary};
        if (!out) throw InputError{"cannot open " + path.string() + " for append"};
        for (const auto& b : bundles) out << to_json(b).dump() << '\n';
        return;
    }
    std::ofstream out{path, std::ios::trunc | std::ios::binary};
    if (!out) throw InputError{"cannot open " + path.string() + " for writing"};
    write(out, bundles);
    if (!out) throw InputError{"write failed for " + path.string()};
}

std::vector<ContractBundle> load(const std::filesystem::path& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) throw InputError{"cannot open dataset " + path.string()};
    return read(in);
}

}  // namespace hpscan::dataset
