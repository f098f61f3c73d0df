#include "appemo/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "appemo/emoji.hpp"
#include "appemo/text.hpp"

namespace appemo {

namespace {

bool parse_signed(std::string_view s, int& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

template <typename Map>
void insert_entry(Map& map, std::string key, typename Map::mapped_type value,
                  const std::string& source, std::size_t line,
                  std::vector<std::string>& warnings) {
  auto [it, inserted] = map.try_emplace(std::move(key), value);
  if (!inserted) {
    warnings.push_back(source + ":" + std::to_string(line) +
                       ": duplicate term '" + it->first +
                       "', last entry wins");
    it->second = std::move(value);
  }
}

void read_dictionary(const DictionarySource& src, Lexicon& lex,
                     std::vector<std::string>& warnings,
                     std::unordered_map<std::string, std::size_t>& booster_lines) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(*src.stream, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty() || line.front() == '#') continue;

    const auto tab = line.find('\t');
    if (tab == std::string_view::npos ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw LexiconError(src.name, line_no, "expected exactly two TAB-separated columns");
    }
    const std::string_view term = line.substr(0, tab);
    const std::string_view value = line.substr(tab + 1);
    if (term.empty()) throw LexiconError(src.name, line_no, "empty term");

    if (src.kind == DictionaryKind::Slang) {
      if (text::trim(value).empty()) {
        throw LexiconError(src.name, line_no, "empty slang replacement");
      }
      insert_entry(lex.slang, text::ascii_lower(term),
                   text::ascii_lower(text::trim(value)), src.name, line_no,
                   warnings);
      continue;
    }

    int score = 0;
    if (!parse_signed(value, score)) {
      throw LexiconError(src.name, line_no,
                         "score is not an integer: '" + std::string(value) + "'");
    }
    switch (src.kind) {
      case DictionaryKind::Sentiment:
      case DictionaryKind::Emoticon:
        if (score == 0 || score < -5 || score > 5) {
          throw LexiconError(src.name, line_no,
                             "score must be in [-5,-1] or [1,5], got " +
                                 std::to_string(score));
        }
        if (src.kind == DictionaryKind::Sentiment) {
          insert_entry(lex.sentiment_terms, text::ascii_lower(term), score,
                       src.name, line_no, warnings);
        } else {
          insert_entry(lex.emoticons, std::string(term), score, src.name,
                       line_no, warnings);
        }
        break;
      case DictionaryKind::Booster:
        if (score < -2 || score > 2) {
          throw LexiconError(src.name, line_no,
                             "boost must be in [-2,2], got " + std::to_string(score));
        }
        booster_lines[text::ascii_lower(term)] = line_no;
        insert_entry(lex.boosters, text::ascii_lower(term), score, src.name,
                     line_no, warnings);
        break;
      case DictionaryKind::Slang:
        break;
    }
  }
}

// Longest emoticon that matches at `pos` inside [chunk_begin, chunk_end)
// without running into adjacent letters or digits. Returns its byte length,
// 0 when none matches.
std::size_t match_emoticon(std::string_view text, std::size_t pos,
                           std::size_t chunk_begin, std::size_t chunk_end,
                           const Lexicon& lexicon, std::size_t max_len) {
  const auto alnum_at = [&](std::size_t i) {
    return text::is_ascii_alnum(static_cast<unsigned char>(text[i]));
  };
  const std::size_t limit = std::min(max_len, chunk_end - pos);
  for (std::size_t len = limit; len > 0; --len) {
    const std::string key(text.substr(pos, len));
    if (!lexicon.emoticons.contains(key)) continue;
    if (alnum_at(pos) && pos > chunk_begin && alnum_at(pos - 1)) continue;
    const std::size_t end = pos + len;
    if (alnum_at(end - 1) && end < chunk_end && alnum_at(end)) continue;
    return len;
  }
  return 0;
}

std::string normalize_word(std::string_view surface) {
  std::string lower = text::ascii_lower(surface);
  std::string out;
  out.reserve(lower.size());
  for (char c : lower) {
    const bool letter = c >= 'a' && c <= 'z';
    const std::size_t n = out.size();
    if (letter && n >= 2 && out[n - 1] == c && out[n - 2] == c) continue;
    out += c;
  }
  return out;
}

void emit_segment(std::string_view text, std::size_t begin, std::size_t end,
                  TokenStream& out) {
  if (begin >= end) return;
  const auto punct_at = [&](std::size_t i) {
    return text::is_ascii_punct(static_cast<unsigned char>(text[i]));
  };
  std::size_t lead = begin;
  while (lead < end && punct_at(lead)) ++lead;
  std::size_t trail = end;
  while (trail > lead && punct_at(trail - 1)) --trail;

  const auto push = [&](std::size_t b, std::size_t e, TokenKind kind) {
    std::string surface(text.substr(b, e - b));
    std::string norm = kind == TokenKind::Word ? normalize_word(surface) : surface;
    out.push_back({std::move(surface), std::move(norm), kind, b});
  };
  if (lead == end) {
    push(begin, end, TokenKind::Punctuation);
    return;
  }
  if (lead > begin) push(begin, lead, TokenKind::Punctuation);
  push(lead, trail, TokenKind::Word);
  if (trail < end) push(trail, end, TokenKind::Punctuation);
}

struct Slot {
  enum class Kind { Neutral, Booster, Sentiment } kind = Kind::Neutral;
  int value = 0;
};

Slot classify(const Lexicon& lexicon, const Token& token) {
  if (token.kind == TokenKind::Emoticon) {
    const auto it = lexicon.emoticons.find(token.surface);
    if (it != lexicon.emoticons.end()) return {Slot::Kind::Sentiment, it->second};
    return {};
  }
  const std::string* term = &token.normalized;
  if (const auto s = lexicon.slang.find(*term); s != lexicon.slang.end()) {
    term = &s->second;
  }
  if (const auto b = lexicon.boosters.find(*term); b != lexicon.boosters.end()) {
    return {Slot::Kind::Booster, b->second};
  }
  if (const auto t = lexicon.sentiment_terms.find(*term);
      t != lexicon.sentiment_terms.end()) {
    return {Slot::Kind::Sentiment, t->second};
  }
  return {};
}

}  // namespace

LexiconError::LexiconError(std::string source, std::size_t line,
                           const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
      source_(std::move(source)),
      line_(line) {}

std::string_view dictionary_role(DictionaryKind kind) {
  switch (kind) {
    case DictionaryKind::Sentiment: return "sentiment";
    case DictionaryKind::Booster: return "boosters";
    case DictionaryKind::Emoticon: return "emoticons";
    case DictionaryKind::Slang: return "slang";
  }
  return "";
}

LexiconLoad load_lexicon(std::span<const DictionarySource> sources) {
  LexiconLoad result;
  std::unordered_map<std::string, std::size_t> booster_lines;
  std::string booster_source;
  for (const auto& src : sources) {
    read_dictionary(src, result.lexicon, result.warnings, booster_lines);
    if (src.kind == DictionaryKind::Booster) booster_source = src.name;
  }
  // A term is either a booster or a sentiment term, never both.
  std::vector<std::pair<std::size_t, std::string>> clashes;
  for (const auto& [term, line] : booster_lines) {
    if (result.lexicon.sentiment_terms.contains(term)) clashes.emplace_back(line, term);
  }
  if (!clashes.empty()) {
    const auto& first = *std::min_element(clashes.begin(), clashes.end());
    throw LexiconError(booster_source, first.first,
                       "'" + first.second + "' is both a booster and a sentiment term");
  }
  return result;
}

LexiconLoad load_lexicon_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw std::runtime_error("cannot open lexicon manifest " + manifest.string());

  struct Entry {
    DictionaryKind kind;
    std::filesystem::path path;
  };
  std::vector<Entry> entries;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw LexiconError(manifest.string(), line_no, "expected role<TAB>path");
    }
    const std::string_view role = text::trim(line.substr(0, tab));
    const std::filesystem::path file(std::string(text::trim(line.substr(tab + 1))));
    DictionaryKind kind;
    if (role == "sentiment") kind = DictionaryKind::Sentiment;
    else if (role == "boosters") kind = DictionaryKind::Booster;
    else if (role == "emoticons") kind = DictionaryKind::Emoticon;
    else if (role == "slang") kind = DictionaryKind::Slang;
    else throw LexiconError(manifest.string(), line_no, "unknown role '" + std::string(role) + "'");
    entries.push_back({kind, file.is_absolute() ? file : manifest.parent_path() / file});
  }

  std::vector<std::ifstream> streams;
  streams.reserve(entries.size());
  std::vector<DictionarySource> sources;
  for (const auto& e : entries) {
    streams.emplace_back(e.path);
    if (!streams.back()) {
      throw std::runtime_error("cannot open " + std::string(dictionary_role(e.kind)) +
                               " dictionary " + e.path.string());
    }
    sources.push_back({e.kind, &streams.back(), e.path.string()});
  }
  return load_lexicon(sources);
}

TokenStream tokenize(std::string_view text, const Lexicon& lexicon) {
  std::size_t max_emoticon = 0;
  for (const auto& [e, _] : lexicon.emoticons) max_emoticon = std::max(max_emoticon, e.size());

  TokenStream out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    // Skip whitespace.
    auto d = text::decode_utf8(text, pos);
    if (text::is_unicode_space(d.cp)) {
      pos += d.length;
      continue;
    }
    const std::size_t chunk_begin = pos;
    std::size_t chunk_end = pos;
    while (chunk_end < text.size()) {
      const auto c = text::decode_utf8(text, chunk_end);
      if (text::is_unicode_space(c.cp)) break;
      chunk_end += c.length;
    }

    std::size_t seg = chunk_begin;
    std::size_t i = chunk_begin;
    while (i < chunk_end) {
      const std::size_t len =
          max_emoticon ? match_emoticon(text, i, chunk_begin, chunk_end, lexicon, max_emoticon) : 0;
      if (len > 0) {
        emit_segment(text, seg, i, out);
        std::string surface(text.substr(i, len));
        out.push_back({surface, surface, TokenKind::Emoticon, i});
        i += len;
        seg = i;
      } else {
        i += text::decode_utf8(text, i).length;
      }
    }
    emit_segment(text, seg, chunk_end, out);
    pos = chunk_end;
  }
  return out;
}

std::string reconstruct(std::string_view original, const TokenStream& tokens) {
  std::string out;
  std::size_t cursor = 0;
  for (const auto& t : tokens) {
    out.append(original.substr(cursor, t.offset - cursor));
    out.append(t.surface);
    cursor = t.offset + t.surface.size();
  }
  out.append(original.substr(cursor));
  return out;
}

SentimentScore score_tokens(const Lexicon& lexicon, const TokenStream& tokens) {
  std::vector<Slot> slots;
  slots.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t.kind != TokenKind::Punctuation) slots.push_back(classify(lexicon, t));
  }

  constexpr std::size_t kBoosterWindow = 2;
  std::vector<int> boost(slots.size(), 0);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].kind != Slot::Kind::Booster) continue;
    for (std::size_t j = i + 1; j < slots.size() && j <= i + kBoosterWindow; ++j) {
      if (slots[j].kind == Slot::Kind::Sentiment) {
        boost[j] += slots[i].value;
        break;
      }
    }
  }

  SentimentScore score;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].kind != Slot::Kind::Sentiment) continue;
    const int base = slots[i].value;
    if (base > 0) {
      score.positive = std::max(score.positive, std::clamp(base + boost[i], 1, 5));
    } else {
      score.negative = std::min(score.negative, std::clamp(base - boost[i], -5, -1));
    }
  }
  return score;
}

SentimentScore score_text(const Lexicon& lexicon, std::string_view text) {
  return score_tokens(lexicon, tokenize(text, lexicon));
}

SentimentScore score_review(const Lexicon& lexicon, const Review& review,
                            const EmojiLexicon* emoji) {
  std::string input = review.text();
  if (emoji) input = substitute_emojis(input, *emoji);
  return score_text(lexicon, input);
}

ScoredReview score_and_combine(const Lexicon& lexicon, const Review& review,
                               const EmojiLexicon* emoji) {
  ScoredReview out{review, score_review(lexicon, review, emoji),
                   CombinedSentiment::undefined()};
  out.combined = combine(out.score);
  return out;
}

}  // namespace appemo
