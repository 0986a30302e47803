#pragma once

#include <string>
#include <vector>

namespace tubeforge {

enum class Label : std::uint8_t { NonFight = 0, Fight = 1 };

using LabelVector = std::vector<Label>;

inline const char* label_name(Label l) {
  return l == Label::Fight ? "fight" : "nonfight";
}

// Accepts "fight"/"nonfight" (case-insensitive); anything else is an error in
// the caller's parsing context, signalled by the bool.
bool parse_label(const std::string& text, Label& out);

}  // namespace tubeforge
