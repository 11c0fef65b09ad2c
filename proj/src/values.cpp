// SPDX-License-Identifier: Apache-2.0

#include "quadfuse/values.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <numeric>
#include <vector>

namespace quadfuse {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Reads exactly `width` digits starting at `pos`.
std::optional<int> read_fixed(std::string_view s, std::size_t pos,
                              std::size_t width) {
  if (pos + width > s.size()) {
    return std::nullopt;
  }
  int value = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (!is_digit(s[i])) {
      return std::nullopt;
    }
    value = value * 10 + (s[i] - '0');
  }
  return value;
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  const std::size_t mantissa_start = i;
  std::size_t digits = 0;
  while (i < text.size() && is_digit(text[i])) {
    ++i;
    ++digits;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && is_digit(text[i])) {
      ++i;
      ++digits;
    }
  }
  if (digits == 0) {
    return std::nullopt;
  }
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      ++i;
    }
    std::size_t exp_digits = 0;
    while (i < text.size() && is_digit(text[i])) {
      ++i;
      ++exp_digits;
    }
    if (exp_digits == 0) {
      return std::nullopt;
    }
  }
  if (i != text.size()) {
    return std::nullopt;
  }
  std::string_view body = text.substr(mantissa_start);
  // from_chars rejects a leading '+', so the sign is applied separately.
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec == std::errc::result_out_of_range) {
    return std::nullopt;
  }
  if (ec != std::errc() || ptr != body.data() + body.size() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return negative ? -value : value;
}

std::optional<double> parse_datetime(std::string_view s) {
  using namespace std::chrono;
  std::size_t pos = 0;
  bool negative_year = false;
  if (!s.empty() && s[0] == '-') {
    negative_year = true;
    pos = 1;
  }
  std::size_t year_digits = 0;
  while (pos + year_digits < s.size() && is_digit(s[pos + year_digits])) {
    ++year_digits;
  }
  if (year_digits < 4) {
    return std::nullopt;
  }
  auto year_value = read_fixed(s, pos, year_digits);
  if (!year_value) return std::nullopt;
  pos += year_digits;
  if (pos >= s.size() || s[pos] != '-') return std::nullopt;
  auto month_value = read_fixed(s, pos + 1, 2);
  if (!month_value) return std::nullopt;
  pos += 3;
  if (pos >= s.size() || s[pos] != '-') return std::nullopt;
  auto day_value = read_fixed(s, pos + 1, 2);
  if (!day_value) return std::nullopt;
  pos += 3;

  const year_month_day date{
      year{negative_year ? -*year_value : *year_value},
      month{static_cast<unsigned>(*month_value)},
      day{static_cast<unsigned>(*day_value)}};
  if (!date.ok()) {
    return std::nullopt;
  }
  double seconds = static_cast<double>(
      duration_cast<std::chrono::seconds>(sys_days{date}.time_since_epoch())
          .count());

  if (pos < s.size() && s[pos] == 'T') {
    auto hh = read_fixed(s, pos + 1, 2);
    if (!hh || pos + 3 >= s.size() || s[pos + 3] != ':') return std::nullopt;
    auto mm = read_fixed(s, pos + 4, 2);
    if (!mm || pos + 6 >= s.size() || s[pos + 6] != ':') return std::nullopt;
    auto ss = read_fixed(s, pos + 7, 2);
    if (!ss) return std::nullopt;
    pos += 9;
    double fraction = 0.0;
    if (pos < s.size() && s[pos] == '.') {
      std::size_t start = pos;
      ++pos;
      while (pos < s.size() && is_digit(s[pos])) ++pos;
      if (pos == start + 1) return std::nullopt;
      std::string buf = "0" + std::string(s.substr(start, pos - start));
      std::from_chars(buf.data(), buf.data() + buf.size(), fraction);
    }
    const bool end_of_day = *hh == 24 && *mm == 0 && *ss == 0 && fraction == 0;
    if ((*hh > 23 && !end_of_day) || *mm > 59 || *ss > 59) {
      return std::nullopt;
    }
    seconds += *hh * 3600.0 + *mm * 60.0 + *ss + fraction;
  }

  if (pos < s.size()) {
    if (s[pos] == 'Z') {
      ++pos;
    } else if (s[pos] == '+' || s[pos] == '-') {
      const int sign = s[pos] == '+' ? 1 : -1;
      auto oh = read_fixed(s, pos + 1, 2);
      if (!oh || pos + 3 >= s.size() || s[pos + 3] != ':') return std::nullopt;
      auto om = read_fixed(s, pos + 4, 2);
      if (!om || *oh > 14 || *om > 59) return std::nullopt;
      seconds -= sign * (*oh * 3600.0 + *om * 60.0);
      pos += 6;
    }
  }
  if (pos != s.size()) {
    return std::nullopt;
  }
  return seconds;
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) {
    return "NaN";
  }
  return std::string(buf.data(), ptr);
}

double round_significant(double value, int digits) {
  if (!std::isfinite(value)) return value;
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::scientific, digits - 1);
  if (ec != std::errc()) return value;
  double rounded = value;
  std::from_chars(buf.data(), ptr, rounded);
  return rounded;
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      len = 1;
      cp = c;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    }
    bool valid = len > 0 && i + len <= text.size();
    for (std::size_t k = 1; valid && k < len; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) {
        valid = false;
      } else {
        cp = (cp << 6) | (cc & 0x3F);
      }
    }
    if (!valid) {
      out.push_back(U'�');
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) {
    std::swap(a, b);
  }
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i + 1;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t above = row[j + 1];
      const std::size_t substitute = diagonal + (a[i] == b[j] ? 0 : 1);
      row[j + 1] = std::min({above + 1, row[j] + 1, substitute});
      diagonal = above;
    }
  }
  return row[b.size()];
}

}  // namespace quadfuse
