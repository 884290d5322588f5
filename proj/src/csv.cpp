#include "levyhit/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace levyhit {

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw std::out_of_range("csv: no column named '" + name + "'");
}

double CsvTable::number(std::size_t row, std::size_t col) const {
    const std::string& cell = rows.at(row).at(col);
    char* end = nullptr;
    double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0')
        throw std::runtime_error("csv: cell '" + cell + "' is not a number");
    return v;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("csv: double formatting failed");
    return std::string(buf, ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw std::invalid_argument("csv: a table needs columns");
}

void CsvWriter::set_meta(const std::string& key, const std::string& value) {
    for (auto& [k, v] : meta_)
        if (k == key) {
            v = value;
            return;
        }
    meta_.emplace_back(key, value);
}

void CsvWriter::set_meta(const std::string& key, double value) {
    set_meta(key, format_double(value));
}

void CsvWriter::add_row(const std::vector<std::string>& row) {
    if (row.size() != columns_.size())
        throw std::invalid_argument("csv: row width does not match the header");
    for (const std::string& cell : row)
        if (cell.find_first_of(",\n") != std::string::npos)
            throw std::invalid_argument("csv: cell '" + cell + "' would break the schema");
    rows_.push_back(row);
}

void CsvWriter::add_row(const std::vector<double>& row) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (double v : row) cells.push_back(format_double(v));
    add_row(cells);
}

std::string CsvWriter::str() const {
    std::ostringstream out;
    for (const auto& [k, v] : meta_) out << "# " << k << ": " << v << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i)
        out << (i ? "," : "") << columns_[i];
    out << "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
    return out.str();
}

void CsvWriter::write_atomic(const std::string& path) const {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("csv: cannot open '" + tmp + "' for writing");
        out << str();
        if (!out.flush()) throw std::runtime_error("csv: write to '" + tmp + "' failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("csv: rename to '" + path + "' failed");
    }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            if (!body.empty() && body[0] == ' ') body.erase(0, 1);
            std::size_t colon = body.find(": ");
            if (colon == std::string::npos)
                table.meta.emplace_back(body, "");
            else
                table.meta.emplace_back(body.substr(0, colon), body.substr(colon + 2));
            continue;
        }
        if (!have_header) {
            table.columns = split_fields(line);
            have_header = true;
            continue;
        }
        std::vector<std::string> row = split_fields(line);
        if (row.size() != table.columns.size())
            throw std::runtime_error("csv: row width " + std::to_string(row.size()) +
                                     " does not match header width " +
                                     std::to_string(table.columns.size()));
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw std::runtime_error("csv: no header row");
    return table;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

}  // namespace levyhit
