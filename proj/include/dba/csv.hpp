#pragma once

#include <string>
#include <string_view>
#include <vector>

// Fixed dialect: comma delimiter, double-quote escaping, UTF-8, header row.
namespace dba::csv {

struct Record {
  std::size_t row = 0;  // 1-based physical record number, header is row 1
  std::vector<std::string> fields;
};

// Throws ParseError on an unterminated quote or stray quote character.
std::vector<Record> parse(std::string_view content, const std::string& source);

// Quotes only when the field holds a comma, quote, CR or LF.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

}  // namespace dba::csv
