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

#include <hpscan/features.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <hpscan/error.hpp>

namespace hpscan::features {

namespace {

    constexpr std::string_view kLibraryPrefix{"library"};
    constexpr std::string_view kMinorPrefix{"compilerMinorVersion"};
    constexpr std::string_view kPatchPrefix{"compilerPatchVersion"};
    constexpr std::string_view kFundFlowPrefix{"fundFlowCase"};

    constexpr int kDictionaryVersion{1};

    std::optional<std::size_t> numeric_suffix(std::string_view name, std::string_view prefix) {
        if (!name.starts_with(prefix) || name.size() == prefix.size()) return std::nullopt;
        std::size_t v{0};
        const auto tail{name.substr(prefix.size())};
        const auto [ptr, ec]{std::from_chars(tail.data(), tail.data() + tail.size(), v)};
        if (ec != std::errc{} || ptr != tail.data() + tail.size()) return std::nullopt;
        return v;
    }

    struct Moments {
        double mean{0};
        double std{0};
    };

    // Population moments; two passes for stability.
    Moments moments(std::span<const double> xs) {
        if (xs.empty()) return {};
        const auto n{static_cast<double>(xs.size())};
        const double mean{std::accumulate(xs.begin(), xs.end(), 0.0) / n};
        double ss{0};
        for (const double x : xs) ss += (x - mean) * (x - mean);
        return {mean, std::sqrt(ss / n)};
    }

    // Exact wei accumulation, converted to ether only at the end.
    std::optional<Moments> ether_moments(const std::vector<Wei>& values) {
        if (values.empty()) return std::nullopt;
        WeiDelta sum{0};
        WeiDelta sum_sq{0};
        for (const auto& v : values) {
            const WeiDelta x{v};
            sum += x;
            sum_sq += x * x;
        }
        const WeiDelta n{static_cast<unsigned long long>(values.size())};
        const WeiDelta var_numerator{n * sum_sq - sum * sum};  // n^2 * variance, exact
        const double nd{static_cast<double>(values.size())};
        constexpr double kWeiPerEther{1e18};
        return Moments{sum.convert_to<double>() / nd / kWeiPerEther,
                       std::sqrt(var_numerator.convert_to<double>()) / nd / kWeiPerEther};
    }

    void fill_moments(std::span<const double> xs, double& mean, double& std) {
        const auto m{moments(xs)};
        mean = m.mean;
        std = m.std;
    }

    template <typename Opt>
    void fill_moments(std::span<const double> xs, Opt& mean, Opt& std) {
        if (xs.empty()) return;
        const auto m{moments(xs)};
        mean = m.mean;
        std = m.std;
    }

    std::string format_value(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return buf;
    }

    std::vector<std::string> split_csv_line(const std::string& line) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream ss{line};
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        if (!line.empty() && line.back() == ',') out.emplace_back();
        return out;
    }

    std::vector<std::string> sorted_unique(std::set<std::string> values) { return {values.begin(), values.end()}; }

    std::vector<std::uint8_t> one_hot(const std::vector<std::string>& vocab, const std::string* value) {
        std::vector<std::uint8_t> out(vocab.size(), 0);
        if (value == nullptr || *value == kAbsentToken) return out;
        const auto it{std::lower_bound(vocab.begin(), vocab.end(), *value)};
        if (it != vocab.end() && *it == *value) out[static_cast<std::size_t>(it - vocab.begin())] = 1;
        return out;
    }

}  // namespace

ColumnSpec column_spec(std::string_view name) {
    const std::string n{name};
    if (name == "hasByteCode" || name == "hasSourceCode") return {n, Family::kSource, Kind::kFlag, false};
    if (name == "numSourceCodeLines" || name == "compilerRuns") return {n, Family::kSource, Kind::kUnbounded, false};
    if (numeric_suffix(name, kLibraryPrefix) || numeric_suffix(name, kMinorPrefix) ||
        numeric_suffix(name, kPatchPrefix)) {
        return {n, Family::kSource, Kind::kCategory, false};
    }
    if (const auto id{numeric_suffix(name, kFundFlowPrefix)}; id && *id < fundflow::kCaseCount) {
        return {n, Family::kFundFlow, Kind::kFrequency, false};
    }
    const auto& tx{transaction_columns()};
    if (std::find(tx.begin(), tx.end(), n) != tx.end()) {
        Kind kind{Kind::kUnbounded};
        if (name.ends_with("Ratio")) kind = Kind::kRatio;
        if (name == "hasInternalTransactions") kind = Kind::kFlag;
        return {n, Family::kTransaction, kind, name.starts_with("internalTransaction")};
    }
    throw InputError{"unknown feature column '" + n + "'"};
}

std::string_view to_string(FeatureSet set) noexcept {
    switch (set) {
        case FeatureSet::kAll: return "all";
        case FeatureSet::kTransactions: return "transactions";
        case FeatureSet::kSource: return "source";
        case FeatureSet::kFundFlow: return "fundflow";
    }
    return "?";
}

std::optional<FeatureSet> parse_feature_set(std::string_view s) noexcept {
    for (const auto set : {FeatureSet::kAll, FeatureSet::kTransactions, FeatureSet::kSource, FeatureSet::kFundFlow}) {
        if (to_string(set) == s) return set;
    }
    return std::nullopt;
}

bool in_set(Family family, FeatureSet set) noexcept {
    switch (set) {
        case FeatureSet::kAll: return true;
        case FeatureSet::kTransactions: return family == Family::kTransaction;
        case FeatureSet::kSource: return family == Family::kSource;
        case FeatureSet::kFundFlow: return family == Family::kFundFlow;
    }
    return false;
}

EncodingDictionary EncodingDictionary::fit(std::span<const SourceInfo> corpus) {
    std::set<std::string> library, minor, patch;
    for (const auto& s : corpus) {
        if (!s.has_source_code) continue;
        if (s.library && !s.library->empty()) library.insert(*s.library);
        if (s.compiler_minor != kAbsentToken) minor.insert(s.compiler_minor);
        if (s.compiler_patch != kAbsentToken) patch.insert(s.compiler_patch);
    }
    return {sorted_unique(std::move(library)), sorted_unique(std::move(minor)), sorted_unique(std::move(patch))};
}

nlohmann::json EncodingDictionary::to_json() const {
    return {{"format", "hpscan-dictionary"},
            {"version", kDictionaryVersion},
            {"library", library},
            {"compilerMinorVersion", compiler_minor},
            {"compilerPatchVersion", compiler_patch}};
}

EncodingDictionary EncodingDictionary::from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("format", "") != "hpscan-dictionary") {
        throw ParseError{"format", "not an hpscan-dictionary document"};
    }
    if (j.value("version", 0) != kDictionaryVersion) throw ParseError{"version", "unsupported dictionary version"};
    EncodingDictionary d;
    try {
        d.library = j.at("library").get<std::vector<std::string>>();
        d.compiler_minor = j.at("compilerMinorVersion").get<std::vector<std::string>>();
        d.compiler_patch = j.at("compilerPatchVersion").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError{"dictionary", e.what()};
    }
    for (auto* v : {&d.library, &d.compiler_minor, &d.compiler_patch}) {
        if (!std::is_sorted(v->begin(), v->end()) || std::adjacent_find(v->begin(), v->end()) != v->end()) {
            throw ParseError{"dictionary", "vocabulary must be sorted and unique"};
        }
    }
    return d;
}

const std::vector<std::string>& transaction_columns() {
    static const std::vector<std::string> kColumns{
        "normalTransactionCount",
        "normalTransactionOtherSenderRatio",
        "normalTransactionValueMean",
        "normalTransactionValueStd",
        "normalTransactionGasMean",
        "normalTransactionGasStd",
        "normalTransactionGasUsedMean",
        "normalTransactionGasUsedStd",
        "normalTransactionBlockSpan",
        "normalTransactionTimeSpan",
        "normalTransactionBlockDeltaMean",
        "normalTransactionBlockDeltaStd",
        "normalTransactionTimeDeltaMean",
        "normalTransactionTimeDeltaStd",
        "internalTransactionCount",
        "internalTransactionOtherSenderRatio",
        "internalTransactionValueMean",
        "internalTransactionValueStd",
        "internalTransactionGasMean",
        "internalTransactionGasStd",
        "internalTransactionGasUsedMean",
        "internalTransactionGasUsedStd",
        "internalTransactionCreationCount",
        "internalTransactionToOtherRatio",
        "hasInternalTransactions",
    };
    return kColumns;
}

std::vector<std::optional<double>> TransactionBlock::values() const {
    return {normal_count,
            normal_other_sender_ratio,
            normal_value_mean,
            normal_value_std,
            normal_gas_mean,
            normal_gas_std,
            normal_gas_used_mean,
            normal_gas_used_std,
            normal_block_span,
            normal_time_span,
            normal_block_delta_mean,
            normal_block_delta_std,
            normal_time_delta_mean,
            normal_time_delta_std,
            internal_count,
            internal_other_sender_ratio,
            internal_value_mean,
            internal_value_std,
            internal_gas_mean,
            internal_gas_std,
            internal_gas_used_mean,
            internal_gas_used_std,
            internal_creation_count,
            internal_to_other_ratio,
            has_internal_transactions ? 1.0 : 0.0};
}

SourceBlock extract_source_features(const Contract& contract, const SourceInfo& source, const EncodingDictionary& dict) {
    SourceBlock b;
    b.has_byte_code = !contract.bytecode.empty();
    b.has_source_code = source.has_source_code;
    const bool src{source.has_source_code};
    b.num_source_code_lines = src ? source.source_line_count : 0;
    b.compiler_runs = src ? source.compiler_runs : 0;
    // Compiler major is constant in practice and not encoded.
    b.library = one_hot(dict.library, src && source.library ? &*source.library : nullptr);
    b.compiler_minor = one_hot(dict.compiler_minor, src ? &source.compiler_minor : nullptr);
    b.compiler_patch = one_hot(dict.compiler_patch, src ? &source.compiler_patch : nullptr);
    return b;
}

double other_sender_ratio(std::span<const Address> parties, const Address& creator) {
    std::set<Address> unique;
    std::size_t total{0};
    for (const auto& p : parties) {
        if (p == creator) continue;
        unique.insert(p);
        ++total;
    }
    return total == 0 ? 0.0 : static_cast<double>(unique.size()) / static_cast<double>(total);
}

TransactionBlock extract_transaction_features(std::span<const NormalTransaction> normals,
                                              std::span<const InternalTransaction> internals, const Address& creator) {
    TransactionBlock t;
    t.normal_count = static_cast<double>(normals.size());

    std::vector<Address> senders;
    std::vector<Wei> values;
    std::vector<double> gas, gas_used;
    for (const auto& tx : normals) {
        senders.push_back(tx.from);
        if (!tx.is_error) values.push_back(tx.value);
        gas.push_back(static_cast<double>(tx.gas));
        gas_used.push_back(static_cast<double>(tx.gas_used));
    }
    t.normal_other_sender_ratio = other_sender_ratio(senders, creator);
    if (const auto m{ether_moments(values)}) {
        t.normal_value_mean = m->mean;
        t.normal_value_std = m->std;
    }
    fill_moments(gas, t.normal_gas_mean, t.normal_gas_std);
    fill_moments(gas_used, t.normal_gas_used_mean, t.normal_gas_used_std);

    if (!normals.empty()) {
        std::vector<std::size_t> order(normals.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::tie(normals[a].block_number, normals[a].transaction_index) <
                   std::tie(normals[b].block_number, normals[b].transaction_index);
        });
        const auto& first{normals[order.front()]};
        const auto& last{normals[order.back()]};
        t.normal_block_span = static_cast<double>(last.block_number) - static_cast<double>(first.block_number);
        t.normal_time_span = static_cast<double>(last.timestamp) - static_cast<double>(first.timestamp);
        if (order.size() >= 2) {
            std::vector<double> block_deltas, time_deltas;
            for (std::size_t i{1}; i < order.size(); ++i) {
                const auto& a{normals[order[i - 1]]};
                const auto& b{normals[order[i]]};
                block_deltas.push_back(static_cast<double>(b.block_number) - static_cast<double>(a.block_number));
                time_deltas.push_back(static_cast<double>(b.timestamp) - static_cast<double>(a.timestamp));
            }
            fill_moments(block_deltas, t.normal_block_delta_mean, t.normal_block_delta_std);
            fill_moments(time_deltas, t.normal_time_delta_mean, t.normal_time_delta_std);
        }
    }

    t.internal_count = static_cast<double>(internals.size());
    t.has_internal_transactions = !internals.empty();
    if (!internals.empty()) {
        std::vector<Address> from, to;
        std::vector<Wei> ivalues;
        std::vector<double> igas, igas_used;
        for (const auto& itx : internals) {
            from.push_back(itx.from);
            to.push_back(itx.receiver());
            if (!itx.is_error) ivalues.push_back(itx.value);
            igas.push_back(static_cast<double>(itx.gas));
            igas_used.push_back(static_cast<double>(itx.gas_used));
            if (itx.is_creation()) t.internal_creation_count += 1;
        }
        t.internal_other_sender_ratio = other_sender_ratio(from, creator);
        t.internal_to_other_ratio = other_sender_ratio(to, creator);
        if (const auto m{ether_moments(ivalues)}) {
            t.internal_value_mean = m->mean;
            t.internal_value_std = m->std;
        }
        fill_moments(igas, t.internal_gas_mean, t.internal_gas_std);
        fill_moments(igas_used, t.internal_gas_used_mean, t.internal_gas_used_std);
    }
    return t;
}

FeatureMatrix::FeatureMatrix(std::vector<ColumnSpec> columns) : columns_{std::move(columns)} {}

void FeatureMatrix::add_row(Address address, std::optional<HoneypotLabel> label,
                            std::span<const std::optional<double>> values) {
    if (values.size() != cols()) {
        throw InputError{"row width " + std::to_string(values.size()) + " != " + std::to_string(cols()) + " columns"};
    }
    for (const auto& v : values) {
        values_.push_back(v.value_or(0.0));
        missing_.push_back(v ? 0 : 1);
    }
    addresses_.push_back(std::move(address));
    labels_.push_back(label);
}

std::optional<std::size_t> FeatureMatrix::column_index(std::string_view name) const {
    for (std::size_t c{0}; c < columns_.size(); ++c) {
        if (columns_[c].name == name) return c;
    }
    return std::nullopt;
}

void FeatureMatrix::set(std::size_t r, std::size_t c, double v) {
    values_[r * cols() + c] = v;
    missing_[r * cols() + c] = 0;
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> rows) const {
    FeatureMatrix out{columns_};
    out.values_.reserve(rows.size() * cols());
    out.missing_.reserve(rows.size() * cols());
    for (const auto r : rows) {
        const auto begin{static_cast<std::ptrdiff_t>(r * cols())};
        const auto end{begin + static_cast<std::ptrdiff_t>(cols())};
        out.values_.insert(out.values_.end(), values_.begin() + begin, values_.begin() + end);
        out.missing_.insert(out.missing_.end(), missing_.begin() + begin, missing_.begin() + end);
        out.addresses_.push_back(addresses_[r]);
        out.labels_.push_back(labels_[r]);
    }
    return out;
}

FeatureMatrix FeatureMatrix::select_columns(std::span<const std::size_t> cols) const {
    std::vector<ColumnSpec> specs;
    for (const auto c : cols) specs.push_back(columns_.at(c));
    FeatureMatrix out{std::move(specs)};
    out.values_.reserve(rows() * cols.size());
    out.missing_.reserve(rows() * cols.size());
    for (std::size_t r{0}; r < rows(); ++r) {
        for (const auto c : cols) {
            out.values_.push_back(at(r, c));
            out.missing_.push_back(missing_[r * this->cols() + c]);
        }
    }
    out.addresses_ = addresses_;
    out.labels_ = labels_;
    return out;
}

std::vector<double> FeatureMatrix::dense(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    std::vector<double> out;
    out.reserve(rows.size() * cols.size());
    for (const auto r : rows) {
        for (const auto c : cols) out.push_back(at(r, c));
    }
    return out;
}

FeatureMatrix assemble_matrix(std::span<const FeatureRow> rows, const EncodingDictionary& dict) {
    std::vector<ColumnSpec> columns;
    const auto add = [&](const std::string& name) { columns.push_back(column_spec(name)); };
    add("hasByteCode");
    add("hasSourceCode");
    add("numSourceCodeLines");
    add("compilerRuns");
    for (std::size_t i{0}; i < dict.library.size(); ++i) add(std::string{kLibraryPrefix} + std::to_string(i));
    for (std::size_t i{0}; i < dict.compiler_minor.size(); ++i) add(std::string{kMinorPrefix} + std::to_string(i));
    for (std::size_t i{0}; i < dict.compiler_patch.size(); ++i) add(std::string{kPatchPrefix} + std::to_string(i));
    for (const auto& name : transaction_columns()) add(name);
    for (std::size_t i{0}; i < fundflow::kCaseCount; ++i) {
        add(fundflow::column_name(fundflow::CaseId{static_cast<std::uint8_t>(i)}));
    }

    FeatureMatrix m{std::move(columns)};
    std::vector<std::optional<double>> values;
    for (const auto& row : rows) {
        const auto& s{row.source};
        if (s.library.size() != dict.library.size() || s.compiler_minor.size() != dict.compiler_minor.size() ||
            s.compiler_patch.size() != dict.compiler_patch.size()) {
            throw InputError{"row " + row.address + " was encoded with a different dictionary"};
        }
        values.clear();
        values.emplace_back(s.has_byte_code ? 1.0 : 0.0);
        values.emplace_back(s.has_source_code ? 1.0 : 0.0);
        values.emplace_back(static_cast<double>(s.num_source_code_lines));
        values.emplace_back(static_cast<double>(s.compiler_runs));
        for (const auto* block : {&s.library, &s.compiler_minor, &s.compiler_patch}) {
            for (const auto bit : *block) values.emplace_back(static_cast<double>(bit));
        }
        for (const auto& v : row.transactions.values()) values.push_back(v);
        for (const double f : row.fund_flow.freq) values.emplace_back(f);
        m.add_row(row.address, row.label, values);
    }
    return m;
}

FeaturizeResult featurize(std::span<const ContractBundle> bundles, const EncodingDictionary& dict) {
    std::vector<FeatureRow> rows;
    FeaturizeResult result;
    for (const auto& b : bundles) {
        if (!b.found || b.normals.empty()) {
            result.skipped.push_back(b.contract.address);
            continue;
        }
        FeatureRow row;
        row.address = b.contract.address;
        row.source = extract_source_features(b.contract, b.source, dict);
        row.transactions = extract_transaction_features(b.normals, b.internals, b.contract.creator);
        const auto events{fundflow::contract_events(b)};
        row.fund_flow = fundflow::frequency_vector(events);
        row.label = b.label;
        rows.push_back(std::move(row));
    }
    result.matrix = assemble_matrix(rows, dict);
    return result;
}

std::vector<std::size_t> family_columns(const FeatureMatrix& m, FeatureSet set) {
    std::vector<std::size_t> out;
    for (std::size_t c{0}; c < m.cols(); ++c) {
        if (in_set(m.columns()[c].family, set)) out.push_back(c);
    }
    return out;
}

void write_csv(std::ostream& out, const FeatureMatrix& m) {
    out << "address";
    for (const auto& c : m.columns()) out << ',' << c.name;
    out << ",isHoneypot,technique\n";
    for (std::size_t r{0}; r < m.rows(); ++r) {
        out << m.address(r);
        for (std::size_t c{0}; c < m.cols(); ++c) {
            out << ',';
            if (!m.is_missing(r, c)) out << format_value(m.at(r, c));
        }
        if (const auto& label{m.label(r)}) {
            out << ',' << (label->is_honeypot ? 1 : 0) << ',' << technique_token(label->technique) << '\n';
        } else {
            out << ",,\n";
        }
    }
}

FeatureMatrix read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DatasetError{1, "empty feature file"};
    // Reports may carry a leading metadata comment.
    std::size_t line_no{1};
    while (line.starts_with("#")) {
        if (!std::getline(in, line)) throw DatasetError{line_no, "missing header"};
        ++line_no;
    }
    const auto header{split_csv_line(line)};
    if (header.size() < 3 || header.front() != "address" || header[header.size() - 2] != "isHoneypot" ||
        header.back() != "technique") {
        throw DatasetError{line_no, "expected header address,...,isHoneypot,technique"};
    }
    std::vector<ColumnSpec> specs;
    for (std::size_t i{1}; i + 2 < header.size(); ++i) {
        try {
            specs.push_back(column_spec(header[i]));
        } catch (const InputError& e) {
            throw DatasetError{line_no, e.what()};
        }
    }
    FeatureMatrix m{std::move(specs)};
    std::vector<std::optional<double>> values(m.cols());
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells{split_csv_line(line)};
        if (cells.size() != header.size()) {
            throw DatasetError{line_no, "expected " + std::to_string(header.size()) + " cells, got " +
                                            std::to_string(cells.size())};
        }
        for (std::size_t c{0}; c < m.cols(); ++c) {
            const auto& cell{cells[c + 1]};
            if (cell.empty()) {
                values[c].reset();
                continue;
            }
            char* end{nullptr};
            const double v{std::strtod(cell.c_str(), &end)};
            if (end != cell.c_str() + cell.size()) {
                throw DatasetError{line_no, "bad number '" + cell + "' in column " + m.columns()[c].name};
            }
            values[c] = v;
        }
        std::optional<HoneypotLabel> label;
        const auto& flag{cells[cells.size() - 2]};
        const auto& token{cells.back()};
        if (!flag.empty() || !token.empty()) {
            const auto technique{parse_technique(token)};
            if ((flag != "0" && flag != "1") || !technique || (flag == "1") != (*technique != Technique::kNone)) {
                throw DatasetError{line_no, "bad label '" + flag + "," + token + "'"};
            }
            label = HoneypotLabel{flag == "1", *technique};
        }
        m.add_row(cells.front(), label, values);
    }
    return m;
}

}  // namespace hpscan::features
