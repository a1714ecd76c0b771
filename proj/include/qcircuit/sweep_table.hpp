#pragma once

// Column table emitted by the command-line tool, with CSV and JSON writers.

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcircuit {

inline constexpr const char* version = "0.1.0";

/// 17 significant digits, enough to round-trip any double.
inline std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

class SweepTable {
public:
    explicit SweepTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    /// Appends a row; rows must arrive in ascending order of the first column.
    void add_row(std::vector<double> row) {
        if (row.size() != columns_.size())
            throw std::invalid_argument("row has " + std::to_string(row.size()) + " entries, table has " +
                                        std::to_string(columns_.size()) + " columns");
        if (!rows_.empty() && row.front() < rows_.back().front())
            throw std::invalid_argument("rows must be ordered by the control column");
        rows_.push_back(std::move(row));
    }

    void set_meta(const std::string& key, const std::string& value) {
        for (auto& kv : metadata_)
            if (kv.first == key) {
                kv.second = value;
                return;
            }
        metadata_.emplace_back(key, value);
    }
    void set_meta(const std::string& key, double value) { set_meta(key, format_number(value)); }

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }
    const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

    std::string meta(const std::string& key) const {
        for (const auto& kv : metadata_)
            if (kv.first == key) return kv.second;
        throw std::out_of_range("no metadata key " + key);
    }

    // '#'-prefixed key=value lines, header row, data rows.
    void write_csv(std::ostream& os) const {
        for (const auto& [k, v] : metadata_) os << "# " << k << '=' << v << '\n';
        for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
        os << '\n';
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
            os << '\n';
        }
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json meta = nlohmann::ordered_json::object();
        for (const auto& [k, v] : metadata_) meta[k] = v;
        return {{"metadata", meta}, {"columns", columns_}, {"rows", rows_}};
    }

    void write_json(std::ostream& os) const { os << to_json().dump(2) << '\n'; }

    std::string csv() const {
        std::ostringstream os;
        write_csv(os);
        return os.str();
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::pair<std::string, std::string>> metadata_;
};

}  // namespace qcircuit
