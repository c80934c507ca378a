#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "endo/params.hpp"

namespace endo {

// Element literals: rational | gen | lit+lit | lit-lit | lit*lit | lit/lit |
// lit^int | -lit | (lit). Generators are u and pi of the tower and s, the
// square root of the algebra's delta (unitary cases: of delta_E).
// ParseError messages carry the column inside the literal.
FieldElement parse_field_literal(const std::string& text, const TowerPtr& tower);
EtaleElement parse_etale_literal(const std::string& text, const EtalePtr& alg);

struct InstanceDocument {
  GroupDescriptor g;
  EndoscopicDatum e;
  RegularParam y;
  RegularParam x;
  std::map<std::string, TowerPtr> towers;  // "F" is the base itself
};

// Throws ParseError with line and column for malformed JSON, and with the
// JSON path and literal column for malformed literals or schema violations.
InstanceDocument parse_document(const std::string& text, std::optional<int> precision = std::nullopt);
InstanceDocument load_document(const std::string& path, std::optional<int> precision = std::nullopt);

// JSON text that parse_document reads back to an equivalent instance.
// Defaulted fields come out explicitly.
std::string serialize_document(const InstanceDocument& doc);

}  // namespace endo
