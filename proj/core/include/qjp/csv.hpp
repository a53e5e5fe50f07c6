#pragma once

#include <string>
#include <vector>

namespace qjp {

// Round-trip numeric formatting: 17 significant digits, '.' decimal
// separator, locale-independent.
std::string format_number(double value);

// Minimal CSV assembly: UTF-8, header row, '\n' line endings.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns);

    void add_row(const std::vector<double>& values);
    void add_raw_row(const std::vector<std::string>& cells);

    std::string str() const;
    void write_file(const std::string& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::string> rows_;
};

} // namespace qjp
