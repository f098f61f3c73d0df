#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace appemo::csv {

// Minimal RFC 4180 reader: quoted fields may contain commas, doubled quotes
// and newlines. `line` is the 1-based physical line the record started on.
struct Record {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  std::optional<Record> next();

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

// Quotes the field only when it contains a comma, quote, or line break.
std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace appemo::csv
