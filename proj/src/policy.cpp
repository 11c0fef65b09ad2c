// SPDX-License-Identifier: Apache-2.0

#include "quadfuse/policy.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "quadfuse/errors.hpp"
#include "quadfuse/resolution_functions.hpp"
#include "quadfuse/values.hpp"

namespace quadfuse {

namespace {

std::vector<std::string> tokenize(std::string_view line, std::size_t line_number) {
  std::vector<std::string> tokens;
  std::string current;
  bool in_token = false;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '\\' && i + 1 < line.size() &&
          (line[i + 1] == '"' || line[i + 1] == '\\')) {
        current.push_back(line[++i]);
      } else if (c == '"') {
        quoted = false;
      } else {
        current.push_back(c);
      }
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      if (in_token) tokens.push_back(std::move(current));
      current.clear();
      in_token = false;
      continue;
    }
    if (c == '#' && !in_token) break;
    in_token = true;
    if (c == '"') {
      quoted = true;
    } else {
      current.push_back(c);
    }
  }
  if (quoted) {
    throw PolicySyntaxError(line_number, "unterminated quoted value");
  }
  if (in_token) tokens.push_back(std::move(current));
  return tokens;
}

void apply_setting(ResolutionStrategy& strategy, const std::string& key,
                   const std::string& value, std::size_t line) {
  if (key == "function") {
    strategy.function_name = std::string(lookup_function(value).name);
  } else if (key == "cardinality") {
    if (value == "SINGLEVALUED") {
      strategy.cardinality = Cardinality::SingleValued;
    } else if (value == "MANYVALUED") {
      strategy.cardinality = Cardinality::ManyValued;
    } else {
      throw PolicySyntaxError(line, "cardinality must be SINGLEVALUED or MANYVALUED");
    }
  } else if (key == "on-error") {
    if (value == "RETURN_ALL") {
      strategy.error_strategy = ErrorStrategy::ReturnAll;
    } else if (value == "IGNORE") {
      strategy.error_strategy = ErrorStrategy::Ignore;
    } else {
      throw PolicySyntaxError(line, "on-error must be RETURN_ALL or IGNORE");
    }
  } else if (key == "agree-coefficient") {
    auto coefficient = parse_number(value);
    if (!coefficient || *coefficient <= 0.0) {
      throw PolicySyntaxError(line, "agree-coefficient must be a positive number");
    }
    strategy.agree_coefficient = *coefficient;
  } else {
    if (!strategy.params.emplace(key, value).second) {
      throw PolicySyntaxError(line, "duplicate parameter '" + key + "'");
    }
  }
}

ResolutionStrategy parse_settings(const std::vector<std::string>& tokens,
                                  std::size_t first, std::size_t line) {
  ResolutionStrategy strategy;
  bool has_function = false;
  for (std::size_t i = first; i < tokens.size(); ++i) {
    const std::string& token = tokens[i];
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw PolicySyntaxError(line, "expected key=value, got '" + token + "'");
    }
    const std::string key = token.substr(0, eq);
    if (key == "function") has_function = true;
    apply_setting(strategy, key, token.substr(eq + 1), line);
  }
  if (!has_function) {
    throw PolicySyntaxError(line, "missing function=<NAME>");
  }
  try {
    validate_strategy(strategy);
  } catch (const MissingParam& e) {
    throw PolicySyntaxError(line, e.what());
  }
  return strategy;
}

}  // namespace

ResolutionPolicy parse_policy(std::string_view text) {
  ResolutionPolicy policy;
  bool seen_default = false;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;

    const std::vector<std::string> tokens = tokenize(line, line_number);
    if (tokens.empty() || tokens.front().starts_with('#')) {
      continue;
    }
    const std::string& keyword = tokens.front();
    if (keyword == "default") {
      if (seen_default) {
        throw PolicySyntaxError(line_number, "duplicate default line");
      }
      policy.default_strategy = parse_settings(tokens, 1, line_number);
      seen_default = true;
    } else if (keyword == "property") {
      if (tokens.size() < 2 || tokens[1].size() < 3 || tokens[1].front() != '<' ||
          tokens[1].back() != '>') {
        throw PolicySyntaxError(line_number, "expected property <IRI>");
      }
      std::string iri = tokens[1].substr(1, tokens[1].size() - 2);
      ResolutionStrategy strategy = parse_settings(tokens, 2, line_number);
      if (!policy.per_property.emplace(iri, std::move(strategy)).second) {
        throw PolicySyntaxError(line_number, "duplicate property <" + iri + ">");
      }
    } else {
      throw PolicySyntaxError(line_number,
                              "expected 'default' or 'property', got '" + keyword + "'");
    }
  }
  return policy;
}

ResolutionPolicy parse_policy_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open policy '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_policy(buffer.str());
}

}  // namespace quadfuse
