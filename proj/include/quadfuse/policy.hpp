// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "quadfuse/strategy.hpp"

namespace quadfuse {

/// Parses the line-oriented policy format:
///
///   # comment (also allowed after a setting)
///   default function=ALL cardinality=SINGLEVALUED on-error=RETURN_ALL agree-coefficient=4
///   property <http://www.w3.org/2000/01/rdf-schema#label> function=BEST
///   property <http://example.org/tags> function=CONCAT separator=", "
///
/// Keys other than function, cardinality, on-error and agree-coefficient
/// become function parameters. Values may be double-quoted, with backslash
/// escapes for quotes and backslashes. Omitted settings take the built-in
/// defaults (ALL, SINGLEVALUED, RETURN_ALL, 4). Throws PolicySyntaxError, or
/// UnknownFunction for an unregistered function name.
ResolutionPolicy parse_policy(std::string_view text);

/// Throws IoError when the file cannot be read.
ResolutionPolicy parse_policy_file(const std::string& path);

}  // namespace quadfuse
