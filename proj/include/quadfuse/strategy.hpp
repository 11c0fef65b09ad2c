// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace quadfuse {

enum class Cardinality { SingleValued, ManyValued };

/// What mediating functions do with values they cannot aggregate.
enum class ErrorStrategy { ReturnAll, Ignore };

struct ResolutionStrategy {
  std::string function_name = "ALL";
  Cardinality cardinality = Cardinality::SingleValued;
  ErrorStrategy error_strategy = ErrorStrategy::ReturnAll;
  /// Function parameters: n, threshold, min, max, separator, source,
  /// metadataProperty, value.
  std::map<std::string, std::string, std::less<>> params;
  double agree_coefficient = 4.0;

  std::optional<std::string_view> param(std::string_view key) const {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return std::string_view(it->second);
  }
};

struct ResolutionPolicy {
  ResolutionStrategy default_strategy;
  /// Keyed by property IRI as written by the user, before canonicalization.
  std::map<std::string, ResolutionStrategy, std::less<>> per_property;
};

std::string_view to_string(Cardinality c);
std::string_view to_string(ErrorStrategy e);

}  // namespace quadfuse
