#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qbattery {

/// Shortest decimal that parses back to the same double; "nan", "inf", "-inf".
std::string format_number(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Header line, then one line per row; '\n' line endings.
void write_csv(std::ostream& out, const CsvTable& table);

}  // namespace qbattery
