#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace moodcast {

/// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF.
/// Blank lines are dropped. Throws ParseError on an unterminated quote.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

std::string csv_escape(std::string_view field);

}  // namespace moodcast
