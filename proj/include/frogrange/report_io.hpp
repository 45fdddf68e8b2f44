#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "frogrange/simulator.hpp"

namespace frogrange {

inline constexpr std::string_view kSchemaId = "frogrange-report/1";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// Shortest form that survives a text round trip ("%.17g", no locale).
std::string format_double(double v);

/// A cell is empty, an integer, a real or a bare token.
using CsvCell = std::variant<std::monostate, std::int64_t, double, std::string>;

/// Comma-separated table with one header row. Emitting a parsed table gives
/// back the original bytes.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<CsvCell>>& rows() const { return rows_; }

  void add_row(std::vector<CsvCell> row);

  std::string emit() const;
  nlohmann::ordered_json to_json() const;  // array of objects keyed by column

  static CsvTable parse(std::string_view text);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<CsvCell>> rows_;
};

nlohmann::ordered_json to_json(const SimReport& report);

}  // namespace frogrange
