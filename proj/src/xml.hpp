#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ged::xml {

/// Minimal DOM for the GXL loader: elements, attributes and character data.
/// Processing instructions, comments and DOCTYPE declarations are skipped.
struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> children;
  std::string text;  // concatenated character data directly inside this element
  int line = 0;

  std::optional<std::string_view> attribute(std::string_view key) const;
};

/// Parses a document with exactly one root element. Throws GraphError with
/// the line number on malformed input.
Element parse(std::string_view content);

std::string escape(std::string_view text);

}  // namespace ged::xml
