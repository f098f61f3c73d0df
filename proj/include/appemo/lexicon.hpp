#pragma once

// Dictionary-based dual-polarity scoring of short informal text.
//
// A text is tokenized, each word is resolved through the slang table and
// looked up in the sentiment and booster dictionaries, and emoticons are
// looked up by surface form. The positive strength is the largest positive
// token score (at least 1) and the negative strength the smallest negative
// token score (at most -1). A booster word adds its boost to the next
// sentiment-bearing token at most two tokens ahead, deepening that token's
// polarity; the result is clamped back into [1,5] or [-5,-1].

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "appemo/combine.hpp"
#include "appemo/model.hpp"

namespace appemo {

class EmojiLexicon;

struct Lexicon {
  std::unordered_map<std::string, int> sentiment_terms;
  std::unordered_map<std::string, int> boosters;
  std::unordered_map<std::string, int> emoticons;
  std::unordered_map<std::string, std::string> slang;

  bool empty() const {
    return sentiment_terms.empty() && boosters.empty() && emoticons.empty() &&
           slang.empty();
  }
};

enum class DictionaryKind { Sentiment, Booster, Emoticon, Slang };

std::string_view dictionary_role(DictionaryKind kind);

struct DictionarySource {
  DictionaryKind kind;
  std::istream* stream;
  std::string name;  // used in diagnostics
};

class LexiconError : public std::runtime_error {
 public:
  LexiconError(std::string source, std::size_t line, const std::string& what);
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

struct LexiconLoad {
  Lexicon lexicon;
  std::vector<std::string> warnings;
};

// Reads `term<TAB>value` lines (`#` lines and blank lines ignored). Word
// terms are lowercased; emoticons are kept verbatim. Throws LexiconError on
// the first malformed line. Duplicate terms: the last entry wins and a
// warning is recorded.
LexiconLoad load_lexicon(std::span<const DictionarySource> sources);

// Manifest: `role<TAB>path` lines with role one of sentiment, boosters,
// emoticons, slang. Relative paths resolve against the manifest directory.
// A role that is not listed yields an empty dictionary.
LexiconLoad load_lexicon_manifest(const std::filesystem::path& manifest);

enum class TokenKind { Word, Emoticon, Punctuation };

struct Token {
  std::string surface;
  std::string normalized;
  TokenKind kind;
  std::size_t offset;  // byte offset of `surface` in the input
};

using TokenStream = std::vector<Token>;

// Splits on Unicode whitespace. Within each chunk, lexicon emoticons are
// matched longest-first (an emoticon starting or ending with a letter or
// digit must not run into adjacent letters or digits); the remaining pieces
// become words with leading and trailing ASCII punctuation split off as
// punctuation tokens. Word normal form is lowercase with runs of three or
// more identical letters collapsed to two.
TokenStream tokenize(std::string_view text, const Lexicon& lexicon);

// Inverse of tokenize: surfaces re-joined with the original separators.
std::string reconstruct(std::string_view original, const TokenStream& tokens);

SentimentScore score_tokens(const Lexicon& lexicon, const TokenStream& tokens);
SentimentScore score_text(const Lexicon& lexicon, std::string_view text);

// Scores title + " " + body, after emoji substitution when `emoji` is given.
SentimentScore score_review(const Lexicon& lexicon, const Review& review,
                            const EmojiLexicon* emoji = nullptr);

ScoredReview score_and_combine(const Lexicon& lexicon, const Review& review,
                               const EmojiLexicon* emoji = nullptr);

}  // namespace appemo
