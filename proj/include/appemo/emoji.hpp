#pragma once

// Emoji handling ahead of lexical scoring: emojis carrying a polarity are
// rewritten to emoticon tokens that the scorer's emoticon dictionary knows.

#include <array>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace appemo {

struct EmojiEntry {
  std::string sequence;  // UTF-8, one or more scalars
  std::uint64_t occurrences = 0;
  int polarity = 0;  // -1, 0 or +1

  friend bool operator==(const EmojiEntry&, const EmojiEntry&) = default;
};

// Replacement token per polarity. The neutral token must not be an emoticon
// the scorer knows, so neutral emojis score (1, -1).
struct EmojiSubstitutions {
  std::string negative = ":(";
  std::string neutral = ":|";
  std::string positive = ":)";

  const std::string& for_polarity(int polarity) const;
};

class EmojiLexiconError : public std::runtime_error {
 public:
  EmojiLexiconError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmojiLexicon {
 public:
  EmojiLexicon() = default;
  // Throws std::invalid_argument on an empty sequence, a polarity outside
  // {-1,0,1}, or a duplicate sequence.
  explicit EmojiLexicon(std::vector<EmojiEntry> entries,
                        EmojiSubstitutions substitutions = {});

  const std::vector<EmojiEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const EmojiSubstitutions& substitutions() const { return substitutions_; }

  // Longest entry whose sequence starts at byte `pos`, or nullptr.
  const EmojiEntry* match(std::string_view text, std::size_t pos) const;

 private:
  std::vector<EmojiEntry> entries_;
  EmojiSubstitutions substitutions_;
  std::unordered_map<std::string, std::size_t> index_;
  std::array<bool, 256> first_byte_{};
  std::size_t max_bytes_ = 0;
};

// CSV with header `emoji,occurrences,polarity`.
EmojiLexicon load_emoji_lexicon(std::istream& in,
                                EmojiSubstitutions substitutions = {});

// Entries with occurrences strictly greater than `min_occurrences`.
EmojiLexicon select_frequent(const EmojiLexicon& lexicon,
                             std::uint64_t min_occurrences = 100);

// Replaces every lexicon emoji with the token for its polarity, separated
// from neighbouring non-space text by single spaces. Variation selectors and
// skin-tone modifiers trailing a matched emoji are consumed with it. All
// other bytes are copied unchanged.
std::string substitute_emojis(std::string_view text, const EmojiLexicon& lexicon);

}  // namespace appemo
