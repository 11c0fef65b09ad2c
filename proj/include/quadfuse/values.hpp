// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace quadfuse {

/// Parses a decimal number: optional sign, digits with an optional decimal
/// point, optional exponent. Surrounding whitespace, inf, nan and hex forms
/// are rejected.
std::optional<double> parse_number(std::string_view text);

/// Parses an xsd:dateTime or xsd:date lexical form into seconds since the
/// Unix epoch (UTC). Timezone offsets are applied; a missing timezone is
/// treated as UTC.
std::optional<double> parse_datetime(std::string_view text);

/// Shortest decimal string that round-trips to `value` ("1", "0.85", "1e+21").
std::string format_double(double value);

/// `value` rounded to `digits` significant decimal digits.
double round_significant(double value, int digits = 15);

/// Decodes UTF-8; invalid bytes are mapped one-to-one to U+FFFD.
std::u32string decode_utf8(std::string_view text);

/// Classic edit distance (insert, delete, substitute; unit costs) over code
/// points.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

}  // namespace quadfuse
