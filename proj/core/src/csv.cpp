#include "qjp/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "qjp/errors.hpp"

namespace qjp {

std::string format_number(double value) {
    if (!std::isfinite(value))
        throw Error("refusing to emit a non-finite number");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvWriter::add_row(const std::vector<double>& values) {
    if (values.size() != columns_.size())
        throw Error("row width does not match header");
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ',';
        line += format_number(values[i]);
    }
    rows_.push_back(std::move(line));
}

void CsvWriter::add_raw_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size())
        throw Error("row width does not match header");
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    rows_.push_back(std::move(line));
}

std::string CsvWriter::str() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ',';
        out += columns_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
        out += row;
        out += '\n';
    }
    return out;
}

void CsvWriter::write_file(const std::string& path) const {
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw Error("cannot open output file: " + path);
    file << str();
}

} // namespace qjp
