#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace tabclf::csv {

using Record = std::vector<std::string>;

/// RFC-4180 records: comma separated, double-quote quoting with "" escapes,
/// CRLF or LF line endings. Throws ParseError on an unterminated quote.
std::vector<Record> read(std::string_view text);
std::vector<Record> read(std::istream& in);

/// Quotes a field only when it contains a comma, quote, CR or LF.
std::string quote(std::string_view field);
void write_record(std::ostream& out, const Record& record);

}  // namespace tabclf::csv
