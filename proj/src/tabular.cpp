#include "tabular.hpp"

#include <istream>
#include <nlohmann/json.hpp>
#include <string_view>

#include "citind/error.hpp"

namespace citind::detail {

namespace {

std::string json_cell(const nlohmann::json& value) {
  switch (value.type()) {
    case nlohmann::json::value_t::null:
      return {};
    case nlohmann::json::value_t::string:
      return value.get<std::string>();
    case nlohmann::json::value_t::array: {
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += '|';
        joined += json_cell(item);
      }
      return joined;
    }
    default:
      return value.dump();
  }
}

// A CSV record may span physical lines when a quoted field holds a newline.
bool read_record(std::istream& in, std::string& record, std::size_t& line) {
  record.clear();
  std::string piece;
  bool in_quotes = false;
  bool any = false;
  while (std::getline(in, piece)) {
    ++line;
    if (!piece.empty() && piece.back() == '\r') piece.pop_back();
    if (any) record += '\n';
    record += piece;
    any = true;
    for (char c : piece) {
      if (c == '"') in_quotes = !in_quotes;
    }
    if (!in_quotes) return true;
  }
  if (in_quotes) throw InputError("unterminated quoted field", line);
  return any;
}

}  // namespace

std::optional<std::string> TabularRow::get(const std::string& column) const {
  auto it = cells.find(column);
  if (it == cells.end()) return std::nullopt;
  std::string value = trim(it->second);
  if (value.empty()) return std::nullopt;
  return value;
}

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split_csv_record(const std::string& record, std::size_t line) {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  for (std::size_t i = 0; i < record.size(); ++i) {
    const char c = record[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < record.size() && record[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (in_quotes) throw InputError("unterminated quoted field", line);
  fields.push_back(std::move(field));
  return fields;
}

void read_rows(std::istream& in, InputFormat format,
               const std::function<void(const TabularRow&)>& visit) {
  std::size_t line = 0;
  if (format == InputFormat::jsonl) {
    std::string text;
    while (std::getline(in, text)) {
      ++line;
      if (trim(text).empty()) continue;
      TabularRow row;
      row.line = line;
      const auto object = nlohmann::json::parse(text, nullptr, false);
      if (object.is_discarded()) {
        row.defect = "malformed JSON";
      } else if (!object.is_object()) {
        row.defect = "expected a JSON object";
      } else {
        for (const auto& [key, value] : object.items()) row.cells[key] = json_cell(value);
      }
      visit(row);
    }
    return;
  }

  std::string record;
  std::vector<std::string> header;
  while (read_record(in, record, line)) {
    if (trim(record).empty()) continue;
    auto fields = split_csv_record(record, line);
    if (header.empty()) {
      for (auto& name : fields) header.push_back(trim(name));
      continue;
    }
    TabularRow row;
    row.line = line;
    if (fields.size() != header.size()) {
      row.defect = "expected " + std::to_string(header.size()) + " fields, found " +
                   std::to_string(fields.size());
      visit(row);
      continue;
    }
    for (std::size_t i = 0; i < header.size(); ++i) row.cells[header[i]] = std::move(fields[i]);
    visit(row);
  }
}

}  // namespace citind::detail
