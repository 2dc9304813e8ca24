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

#ifndef BANDGAP_CSV_HPP
#define BANDGAP_CSV_HPP

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace bandgap {

/// Formats with 15 significant digits ("%.15g"), locale independent.
std::string format_number(double value);

/// Comma-separated table: `#`-prefixed metadata lines, one header line, numeric rows.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    void add_meta(std::string_view key, std::string_view value);
    void add_meta(std::string_view key, double value);
    void add_row(std::vector<double> row);
    void add_row(std::initializer_list<double> row) { add_row(std::vector<double>(row)); }

    std::size_t rows() const { return rows_.size(); }
    std::size_t columns() const { return columns_.size(); }
    std::vector<std::string> const& header() const { return columns_; }
    std::vector<double> const& row(std::size_t i) const { return rows_.at(i); }
    /// Column by name; throws std::out_of_range if absent.
    std::vector<double> column(std::string_view name) const;

    void write(std::ostream& os) const;
    /// Throws std::runtime_error when the file cannot be written.
    void write_file(std::string const& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::vector<double>> rows_;
};

} // namespace bandgap

#endif
