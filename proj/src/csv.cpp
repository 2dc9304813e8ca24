/*
 Copyright 2026 The Bandgap Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "bandgap/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bandgap {

std::string format_number(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", value);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns))
{
    if (columns_.empty()) {
        throw std::invalid_argument("CsvTable: at least one column required");
    }
}

void CsvTable::add_meta(std::string_view key, std::string_view value)
{
    meta_.emplace_back(std::string(key), std::string(value));
}

void CsvTable::add_meta(std::string_view key, double value)
{
    add_meta(key, format_number(value));
}

void CsvTable::add_row(std::vector<double> row)
{
    if (row.size() != columns_.size()) {
        throw std::invalid_argument("CsvTable: row has " + std::to_string(row.size()) + " fields, expected " +
                                    std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(row));
}

std::vector<double> CsvTable::column(std::string_view name) const
{
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (columns_[j] == name) {
            std::vector<double> out;
            out.reserve(rows_.size());
            for (auto const& r : rows_) {
                out.push_back(r[j]);
            }
            return out;
        }
    }
    throw std::out_of_range("CsvTable: no column named " + std::string(name));
}

void CsvTable::write(std::ostream& os) const
{
    for (auto const& [k, v] : meta_) {
        os << "# " << k << '=' << v << '\n';
    }
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        os << (j ? "," : "") << columns_[j];
    }
    os << '\n';
    for (auto const& r : rows_) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            os << (j ? "," : "") << format_number(r[j]);
        }
        os << '\n';
    }
}

void CsvTable::write_file(std::string const& path) const
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    write(out);
    if (!out) {
        throw std::runtime_error("write failed for " + path);
    }
}

} // namespace bandgap
