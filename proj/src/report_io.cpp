#include "frogrange/report_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace frogrange {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw std::invalid_argument("CSV header is empty");
}

void CsvTable::add_row(std::vector<CsvCell> row) {
  if (row.size() != header_.size()) {
    throw std::invalid_argument("CSV row width does not match header");
  }
  rows_.push_back(std::move(row));
}

namespace {

std::string cell_text(const CsvCell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {};
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return v;
        }
      },
      cell);
}

nlohmann::ordered_json cell_json(const CsvCell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else {
          return v;
        }
      },
      cell);
}

// Picks the cell type whose canonical text is exactly `token`.
CsvCell parse_cell(std::string_view token) {
  if (token.empty()) return std::monostate{};
  std::int64_t i = 0;
  const auto* end = token.data() + token.size();
  if (auto [ptr, ec] = std::from_chars(token.data(), end, i);
      ec == std::errc() && ptr == end && std::to_string(i) == token) {
    return i;
  }
  const std::string text(token);
  char* stop = nullptr;
  const double d = std::strtod(text.c_str(), &stop);
  if (stop == text.c_str() + text.size() && format_double(d) == text) return d;
  return text;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string CsvTable::emit() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i > 0) out += ',';
    out += header_[i];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += cell_text(row[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json CsvTable::to_json() const {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[header_[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

CsvTable CsvTable::parse(std::string_view text) {
  if (text.ends_with('\n')) text.remove_suffix(1);
  const auto lines = split(text, '\n');
  std::vector<std::string> header;
  for (auto h : split(lines.front(), ',')) header.emplace_back(h);
  CsvTable table(std::move(header));
  for (std::size_t l = 1; l < lines.size(); ++l) {
    std::vector<CsvCell> row;
    for (auto token : split(lines[l], ',')) row.push_back(parse_cell(token));
    table.add_row(std::move(row));
  }
  return table;
}

nlohmann::ordered_json to_json(const SimReport& report) {
  nlohmann::ordered_json j;
  j["sampler"] = report.sampler;
  j["replicas"] = report.replicas;
  j["seed"] = report.seed;
  auto pmf = nlohmann::ordered_json::array();
  for (const auto& [x, count] : report.empirical_pmf) {
    pmf.push_back({{"x", x},
                   {"count", count},
                   {"frequency", static_cast<double>(count) /
                                     static_cast<double>(report.replicas)}});
  }
  j["empirical_pmf"] = std::move(pmf);
  auto moments = nlohmann::ordered_json::array();
  for (const auto& m : report.moments) {
    moments.push_back({{"m", m.m},
                       {"estimate", m.estimate},
                       {"standard_error", m.standard_error}});
  }
  j["moments"] = std::move(moments);
  if (report.wave_counts) {
    auto waves = nlohmann::ordered_json::array();
    for (const auto& [w, count] : *report.wave_counts) {
      waves.push_back({{"waves", w}, {"count", count}});
    }
    j["wave_counts"] = std::move(waves);
  }
  return j;
}

}  // namespace frogrange
