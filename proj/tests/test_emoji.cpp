#include <doctest.h>

#include <fstream>
#include <sstream>

#include "appemo/emoji.hpp"
#include "appemo/lexicon.hpp"
#include "support.hpp"

using namespace appemo;

namespace {

const std::string kGrin = "\xF0\x9F\x98\x80";   // U+1F600
const std::string kAngry = "\xF0\x9F\x98\xA1";  // U+1F621
const std::string kNeutral = "\xF0\x9F\x98\x90";
const std::string kThumb = "\xF0\x9F\x91\x8D";            // U+1F44D
const std::string kSkin = "\xF0\x9F\x8F\xBD";             // U+1F3FD
const std::string kHeart = "\xE2\x9D\xA4";                // U+2764
const std::string kVs16 = "\xEF\xB8\x8F";                 // U+FE0F

EmojiLexicon sample() {
  return EmojiLexicon({{kGrin, 500, 1}, {kAngry, 300, -1}, {kNeutral, 200, 0},
                       {kThumb, 400, 1}, {kThumb + kSkin, 150, -1}, {kHeart, 900, 1}});
}

}  // namespace

TEST_CASE("load_emoji_lexicon reads the three-column CSV") {
  std::istringstream in("emoji,occurrences,polarity\n" + kGrin + ",120,1\n" + kNeutral +
                        ",50,0\n" + kAngry + ",300,-1\n");
  const auto lex = load_emoji_lexicon(in);
  REQUIRE(lex.size() == 3);
  CHECK(lex.entries()[0] == EmojiEntry{kGrin, 120, 1});
  CHECK(lex.entries()[2].polarity == -1);
}

TEST_CASE("load_emoji_lexicon rejects bad rows with their line") {
  const auto line_of = [](const std::string& body) -> std::size_t {
    std::istringstream in("emoji,occurrences,polarity\n" + body);
    try {
      load_emoji_lexicon(in);
    } catch (const EmojiLexiconError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of(kGrin + ",10,2\n") == 2);
  CHECK(line_of(kGrin + ",10,1\n" + kGrin + ",11,1\n") == 3);
  CHECK(line_of(kGrin + ",-1,1\n") == 2);
  CHECK(line_of(kGrin + ",10\n") == 2);
  CHECK(line_of(",10,1\n") == 2);
  std::istringstream bad_header("emoji,count,polarity\n");
  CHECK_THROWS_AS(load_emoji_lexicon(bad_header), EmojiLexiconError);
}

TEST_CASE("bundled sample emoji lexicon loads") {
  std::ifstream in(appemo::testing::data_dir() / "fixtures" / "emoji_sample.csv");
  const auto lex = load_emoji_lexicon(in);
  CHECK(lex.size() == 14);
  // One entry sits exactly at 100 and the skin-tone variant has 40.
  CHECK(select_frequent(lex, 100).size() == 12);
}

TEST_CASE("select_frequent keeps strictly more than the threshold") {
  const EmojiLexicon lex({{"a", 100, 1}, {"b", 101, -1}});
  const auto kept = select_frequent(lex, 100);
  REQUIRE(kept.size() == 1);
  CHECK(kept.entries()[0].sequence == "b");

  const EmojiLexicon all({{"a", 1, 1}, {"b", 7, 0}});
  CHECK(select_frequent(all, 0).entries() == all.entries());
}

TEST_CASE("property: selection count equals a brute-force count") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<EmojiEntry> entries;
    const int n = static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
      entries.push_back({"e" + std::to_string(i), rng() % 250, static_cast<int>(rng() % 3) - 1});
    }
    const EmojiLexicon lex(entries);
    const std::uint64_t threshold = rng() % 250;
    std::size_t expected = 0;
    for (const auto& e : entries) expected += e.occurrences > threshold ? 1 : 0;
    CHECK(select_frequent(lex, threshold).size() == expected);
  }
}

TEST_CASE("substitute_emojis examples") {
  const auto lex = sample();
  CHECK(substitute_emojis("nice " + kGrin, lex) == "nice :)");
  CHECK(substitute_emojis("no emojis here, just text!", lex) == "no emojis here, just text!");
  CHECK(substitute_emojis(kAngry + kAngry, lex) == ":( :(");
  CHECK(substitute_emojis("ok" + kNeutral + "fine", lex) == "ok :| fine");
  CHECK(substitute_emojis("", lex).empty());
}

TEST_CASE("substitution prefers the longest sequence and absorbs modifiers") {
  const auto lex = sample();
  CHECK(substitute_emojis(kThumb + kSkin, lex) == ":(");  // the toned entry, not the base
  CHECK(substitute_emojis(kThumb, lex) == ":)");
  CHECK(substitute_emojis(kHeart + kVs16 + "!", lex) == ":) !");
  // Not in the lexicon: untouched.
  const std::string other = "\xF0\x9F\x90\xB1";
  CHECK(substitute_emojis("cat " + other, lex) == "cat " + other);
}

TEST_CASE("substituted emojis score like the manual replacement") {
  const auto& scorer = appemo::testing::seed_lexicon();
  const auto lex = sample();
  const auto rewritten = substitute_emojis(kAngry + kAngry, lex);
  CHECK(score_text(scorer, rewritten) == score_text(scorer, ":( :("));
  CHECK(score_text(scorer, rewritten).negative <= -2);
  CHECK(score_text(scorer, substitute_emojis(kNeutral, lex)) == SentimentScore{1, -1});
}

TEST_CASE("property: substitution is idempotent, order-preserving and score-equivalent") {
  const auto lex = sample();
  const auto& scorer = appemo::testing::seed_lexicon();
  const std::vector<std::string> pieces{"good", "bad", " ", "!", "x", kGrin, kAngry,
                                        kNeutral, kThumb, kSkin, kHeart, kVs16, "\xC3\xA9"};
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 300; ++iter) {
    std::string text;
    const int n = static_cast<int>(rng() % 12);
    std::vector<std::string> chosen;
    for (int i = 0; i < n; ++i) chosen.push_back(pieces[rng() % pieces.size()]);
    for (const auto& p : chosen) text += p;

    const auto once = substitute_emojis(text, lex);
    CHECK(substitute_emojis(once, lex) == once);

    // Manual rewrite: each emoji becomes its token wrapped in spaces.
    const std::string& manual = text;
    std::string manual_rewritten;
    for (std::size_t i = 0; i < manual.size();) {
      if (const EmojiEntry* e = lex.match(manual, i)) {
        manual_rewritten += " " + lex.substitutions().for_polarity(e->polarity) + " ";
        i += e->sequence.size();
        while (manual.compare(i, kSkin.size(), kSkin) == 0 ||
               manual.compare(i, kVs16.size(), kVs16) == 0) {
          i += manual.compare(i, kSkin.size(), kSkin) == 0 ? kSkin.size() : kVs16.size();
        }
      } else {
        manual_rewritten += manual[i++];
      }
    }
    CHECK(score_text(scorer, once) == score_text(scorer, manual_rewritten));

    // Non-emoji characters keep their relative order.
    const auto strip = [&](const std::string& s) {
      std::string out;
      for (char c : s) {
        if (c == 'g' || c == 'o' || c == 'd' || c == 'b' || c == 'a' || c == 'x' || c == '!') {
          out += c;
        }
      }
      return out;
    };
    CHECK(strip(once) == strip(text));
  }
}
