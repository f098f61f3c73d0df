#include "appemo/csv.hpp"

namespace appemo::csv {

std::optional<Record> Reader::next() {
  std::string physical;
  while (std::getline(in_, physical)) {
    ++line_;
    if (!physical.empty() && physical.back() == '\r') physical.pop_back();
    if (!physical.empty()) break;
  }
  if (physical.empty()) return std::nullopt;

  Record rec;
  rec.line = line_;
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  for (;;) {
    if (i == physical.size()) {
      if (!quoted) break;
      // Line break inside a quoted field.
      std::string more;
      if (!std::getline(in_, more)) break;
      ++line_;
      if (!more.empty() && more.back() == '\r') more.pop_back();
      field += '\n';
      physical = std::move(more);
      i = 0;
      continue;
    }
    const char c = physical[i++];
    if (quoted) {
      if (c == '"') {
        if (i < physical.size() && physical[i] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      rec.fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  rec.fields.push_back(std::move(field));
  return rec;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

}  // namespace appemo::csv
