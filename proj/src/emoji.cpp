#include "appemo/emoji.hpp"

#include <algorithm>
#include <charconv>

#include "appemo/csv.hpp"
#include "appemo/text.hpp"

namespace appemo {

namespace {

bool is_emoji_modifier(char32_t cp) {
  return cp == 0xFE0E || cp == 0xFE0F || (cp >= 0x1F3FB && cp <= 0x1F3FF);
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  s = text::trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

const std::string& EmojiSubstitutions::for_polarity(int polarity) const {
  if (polarity > 0) return positive;
  if (polarity < 0) return negative;
  return neutral;
}

EmojiLexiconError::EmojiLexiconError(std::size_t line, const std::string& what)
    : std::runtime_error("emoji lexicon line " + std::to_string(line) + ": " + what),
      line_(line) {}

EmojiLexicon::EmojiLexicon(std::vector<EmojiEntry> entries,
                           EmojiSubstitutions substitutions)
    : entries_(std::move(entries)), substitutions_(std::move(substitutions)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.sequence.empty()) throw std::invalid_argument("empty emoji sequence");
    if (e.polarity < -1 || e.polarity > 1) {
      throw std::invalid_argument("emoji polarity must be -1, 0 or 1");
    }
    if (!index_.emplace(e.sequence, i).second) {
      throw std::invalid_argument("duplicate emoji '" + e.sequence + "'");
    }
    first_byte_[static_cast<unsigned char>(e.sequence.front())] = true;
    max_bytes_ = std::max(max_bytes_, e.sequence.size());
  }
}

const EmojiEntry* EmojiLexicon::match(std::string_view text, std::size_t pos) const {
  if (pos >= text.size() || !first_byte_[static_cast<unsigned char>(text[pos])]) {
    return nullptr;
  }
  const std::size_t limit = std::min(max_bytes_, text.size() - pos);
  for (std::size_t len = limit; len > 0; --len) {
    const auto it = index_.find(std::string(text.substr(pos, len)));
    if (it != index_.end()) return &entries_[it->second];
  }
  return nullptr;
}

EmojiLexicon load_emoji_lexicon(std::istream& in, EmojiSubstitutions substitutions) {
  csv::Reader reader(in);
  const auto header = reader.next();
  if (!header) return EmojiLexicon({}, std::move(substitutions));
  const std::vector<std::string> expected{"emoji", "occurrences", "polarity"};
  std::vector<std::string> got;
  for (const auto& f : header->fields) got.push_back(text::ascii_lower(text::trim(f)));
  if (got != expected) {
    throw EmojiLexiconError(header->line, "expected header emoji,occurrences,polarity");
  }

  std::vector<EmojiEntry> entries;
  std::unordered_map<std::string, std::size_t> seen;
  while (auto rec = reader.next()) {
    if (rec->fields.size() != 3) {
      throw EmojiLexiconError(rec->line, "expected 3 fields, got " +
                                             std::to_string(rec->fields.size()));
    }
    EmojiEntry e;
    e.sequence = std::string(text::trim(rec->fields[0]));
    if (e.sequence.empty()) throw EmojiLexiconError(rec->line, "empty emoji");
    std::int64_t occ = 0;
    if (!parse_int(rec->fields[1], occ) || occ < 0) {
      throw EmojiLexiconError(rec->line, "occurrences must be a nonnegative integer");
    }
    e.occurrences = static_cast<std::uint64_t>(occ);
    if (!parse_int(rec->fields[2], e.polarity) || e.polarity < -1 || e.polarity > 1) {
      throw EmojiLexiconError(rec->line, "polarity must be -1, 0 or 1");
    }
    if (auto [it, fresh] = seen.emplace(e.sequence, rec->line); !fresh) {
      throw EmojiLexiconError(rec->line, "duplicate emoji (first seen on line " +
                                             std::to_string(it->second) + ")");
    }
    entries.push_back(std::move(e));
  }
  return EmojiLexicon(std::move(entries), std::move(substitutions));
}

EmojiLexicon select_frequent(const EmojiLexicon& lexicon, std::uint64_t min_occurrences) {
  std::vector<EmojiEntry> kept;
  std::copy_if(lexicon.entries().begin(), lexicon.entries().end(), std::back_inserter(kept),
               [&](const EmojiEntry& e) { return e.occurrences > min_occurrences; });
  return EmojiLexicon(std::move(kept), lexicon.substitutions());
}

std::string substitute_emojis(std::string_view text, const EmojiLexicon& lexicon) {
  std::string out;
  out.reserve(text.size());
  bool prev_space = true;  // start of text needs no separator
  bool pad_next = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (const EmojiEntry* e = lexicon.match(text, pos)) {
      pos += e->sequence.size();
      while (pos < text.size()) {
        const auto d = text::decode_utf8(text, pos);
        if (!is_emoji_modifier(d.cp)) break;
        pos += d.length;
      }
      if (!prev_space) out += ' ';
      out += lexicon.substitutions().for_polarity(e->polarity);
      prev_space = false;
      pad_next = true;
      continue;
    }
    const auto d = text::decode_utf8(text, pos);
    const bool space = text::is_unicode_space(d.cp);
    if (pad_next && !space) out += ' ';
    pad_next = false;
    out.append(text.substr(pos, d.length));
    prev_space = space;
    pos += d.length;
  }
  return out;
}

}  // namespace appemo
