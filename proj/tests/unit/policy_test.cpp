// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "quadfuse/errors.hpp"
#include "quadfuse/policy.hpp"

using namespace quadfuse;

TEST_CASE("empty policy takes defaults") {
  const ResolutionPolicy p = parse_policy("");
  CHECK(p.default_strategy.function_name == "ALL");
  CHECK(p.default_strategy.cardinality == Cardinality::SingleValued);
  CHECK(p.default_strategy.error_strategy == ErrorStrategy::ReturnAll);
  CHECK(p.default_strategy.agree_coefficient == 4.0);
  CHECK(p.per_property.empty());
}

TEST_CASE("default and per-property lines") {
  const ResolutionPolicy p = parse_policy(
      "# fusion policy\n"
      "default function=ALL\n"
      "\n"
      "property <http://www.w3.org/2000/01/rdf-schema#label> function=BEST   # labels\n"
      "property <urn:p> function=topn n=3 cardinality=MANYVALUED on-error=IGNORE agree-coefficient=2.5\n"
      "property <urn:tags> function=CONCAT separator=\", \\\"x\\\" \\\\\"\n");
  CHECK(p.default_strategy.function_name == "ALL");
  CHECK(p.per_property.at("http://www.w3.org/2000/01/rdf-schema#label").function_name == "BEST");
  const ResolutionStrategy& top = p.per_property.at("urn:p");
  CHECK(top.function_name == "TOPN");
  CHECK(top.param("n") == "3");
  CHECK(top.cardinality == Cardinality::ManyValued);
  CHECK(top.error_strategy == ErrorStrategy::Ignore);
  CHECK(top.agree_coefficient == 2.5);
  CHECK(p.per_property.at("urn:tags").param("separator") == ", \"x\" \\");
}

TEST_CASE("syntax errors carry the line number") {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_policy(text);
    } catch (const PolicySyntaxError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("default function=ALL\nfrobnicate\n") == 2);
  CHECK(line_of("property urn:p function=BEST\n") == 1);
  CHECK(line_of("property <urn:p> cardinality=MANYVALUED\n") == 1);
  CHECK(line_of("default function=ALL cardinality=SOMETIMES\n") == 1);
  CHECK(line_of("default function=ALL on-error=PANIC\n") == 1);
  CHECK(line_of("default function=ALL agree-coefficient=0\n") == 1);
  CHECK(line_of("default function=ALL\ndefault function=ANY\n") == 2);
  CHECK(line_of("property <urn:p> function=ANY\nproperty <urn:p> function=ALL\n") == 2);
  CHECK(line_of("property <urn:p> function=CONCAT separator=\"open\n") == 1);
  CHECK(line_of("property <urn:p> function=TOPN n=2 n=3\n") == 1);
  CHECK(line_of("\n\nproperty <urn:p> function=TOPN\n") == 3);
}

TEST_CASE("unknown functions surface at parse time") {
  CHECK_THROWS_AS(parse_policy("property <urn:p> function=FROBNICATE\n"), UnknownFunction);
  CHECK_THROWS_AS(parse_policy_file("/nonexistent/policy.txt"), IoError);
}
