#pragma once

#include <string>
#include <vector>

namespace lzs {

/// Shortest decimal that reads back to v, capped at 12 significant digits.
std::string format_number(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  ///< -1 when absent
};

std::string to_csv(const CsvTable& table);
void write_csv(const CsvTable& table, const std::string& path);

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

}  // namespace lzs
