#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace survcor::csv {

/// Split one CSV record into fields per RFC 4180. A double quote opens a
/// quoted field and "" inside quotes is a literal quote. Throws
/// FormatError on an unterminated quote or on text trailing a closing
/// quote.
std::vector<std::string> split_record(std::string_view line);

/// Quote a field if it contains a comma, a quote, or a line break;
/// otherwise return it unchanged.
std::string quote_field(std::string_view field);

/// Drop a leading UTF-8 byte-order mark, if present.
std::string_view strip_bom(std::string_view text);

/// Trim ASCII whitespace from both ends.
std::string_view trim(std::string_view s);

}  // namespace survcor::csv
