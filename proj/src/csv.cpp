#include "dba/csv.hpp"

#include "dba/error.hpp"

namespace dba::csv {

std::vector<Record> parse(std::string_view content, const std::string& source) {
  if (content.substr(0, 3) == "\xEF\xBB\xBF") content.remove_prefix(3);

  std::vector<Record> out;
  Record cur{1, {}};
  std::string field;
  bool in_quotes = false;
  bool field_quoted = false;
  bool record_has_data = false;
  std::size_t row = 1;

  auto end_field = [&] {
    cur.fields.push_back(std::move(field));
    field.clear();
    field_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    out.push_back(std::move(cur));
    cur = Record{++row, {}};
    record_has_data = false;
  };

  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_quoted)
          throw ParseError(source, row, "", "unexpected quote inside unquoted field");
        in_quotes = true;
        field_quoted = true;
        record_has_data = true;
        break;
      case ',':
        end_field();
        record_has_data = true;
        break;
      case '\r':
        if (i + 1 < content.size() && content[i + 1] == '\n') ++i;
        [[fallthrough]];
      case '\n':
        if (record_has_data || !field.empty()) {
          end_record();
        } else {
          ++row;  // blank line
          cur.row = row;
        }
        break;
      default:
        if (field_quoted)
          throw ParseError(source, row, "", "text after closing quote");
        field.push_back(c);
        record_has_data = true;
    }
  }
  if (in_quotes) throw ParseError(source, row, "", "unterminated quoted field");
  if (record_has_data || !field.empty()) end_record();
  return out;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += escape(fields[i]);
  }
  return out;
}

}  // namespace dba::csv
