#include "qbattery/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "qbattery/errors.hpp"

namespace qbattery {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  require(ec == std::errc(), "format_number: conversion failed");
  return {buf.data(), ptr};
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    require(row.size() == table.header.size(), "write_csv: row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

}  // namespace qbattery
