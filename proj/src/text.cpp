#include "dba/text.hpp"

#include <cctype>
#include <cmath>
#include <fmt/core.h>

#include "dba/error.hpp"

namespace dba::text {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string name_key(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

int parse_clock(std::string_view s) {
  auto t = trim(s);
  auto colon = t.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 3 != t.size())
    throw DomainError("clock value '" + t + "' is not HH:MM");
  int h = 0, m = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i == colon) continue;
    if (!std::isdigit(static_cast<unsigned char>(t[i])))
      throw DomainError("clock value '" + t + "' is not HH:MM");
    (i < colon ? h : m) = (i < colon ? h : m) * 10 + (t[i] - '0');
  }
  if (h > 24 || m > 59 || (h == 24 && m != 0))
    throw DomainError("clock value '" + t + "' out of range");
  return h * 60 + m;
}

std::string format_clock(int minutes) {
  return fmt::format("{:02d}:{:02d}", minutes / 60, minutes % 60);
}

std::string fixed_half_even(double value, int decimals) {
  if (!std::isfinite(value)) return "";
  const double scale = std::pow(10.0, decimals);
  // nearbyint honours the default round-to-nearest-even mode.
  double scaled = std::nearbyint(value * scale);
  double rounded = scaled / scale;
  if (rounded == 0.0) rounded = 0.0;  // drop negative zero
  return fmt::format("{:.{}f}", rounded, decimals);
}

std::string one_decimal(double value) { return fixed_half_even(value, 1); }

}  // namespace dba::text
