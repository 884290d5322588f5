#pragma once

#include <string>
#include <utility>
#include <vector>

namespace levyhit {

// One parsed CSV: leading "# key: value" comment lines, a header row, then
// data rows kept as verbatim strings (commands mix labels and numbers).
struct CsvTable {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    // column index by name, throws std::out_of_range when absent
    std::size_t column(const std::string& name) const;
    double number(std::size_t row, std::size_t col) const;
};

// shortest decimal form that parses back to the same double
std::string format_double(double v);

// Accumulates metadata and rows, then writes the file in one shot through a
// temporary sibling + rename, so readers never observe a partial file.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns);

    void set_meta(const std::string& key, const std::string& value);
    void set_meta(const std::string& key, double value);
    void add_row(const std::vector<std::string>& row);
    void add_row(const std::vector<double>& row);

    std::string str() const;
    void write_atomic(const std::string& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::vector<std::string>> rows_;
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

}  // namespace levyhit
