#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace appemo {

// Dual sentiment strength of one text: positive in [1,5] (1 = not positive),
// negative in [-5,-1] (-1 = not negative).
struct SentimentScore {
  int positive = 1;
  int negative = -1;

  bool valid() const {
    return positive >= 1 && positive <= 5 && negative >= -5 && negative <= -1;
  }
  friend bool operator==(const SentimentScore&, const SentimentScore&) = default;
};

// A single sentiment on the -5..5 scale, or Undefined when the two strengths
// cancel at high intensity. 0 is neutral.
class CombinedSentiment {
 public:
  static CombinedSentiment undefined() { return CombinedSentiment(); }
  static CombinedSentiment of(int value);

  bool defined() const { return value_.has_value(); }
  // Precondition: defined().
  int value() const { return *value_; }
  const std::optional<int>& get() const { return value_; }

  friend bool operator==(const CombinedSentiment&,
                         const CombinedSentiment&) = default;

 private:
  CombinedSentiment() = default;
  explicit CombinedSentiment(int v) : value_(v) {}
  std::optional<int> value_;
};

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// p if p+n > 0, n if p+n < 0, 0 when they cancel below 4, Undefined when
// they cancel at 4 or 5. Throws ContractViolation for an invalid score.
CombinedSentiment combine(const SentimentScore& score);

enum class Polarity { Positive, Neutral, Negative, Undefined };

Polarity polarity_class(const CombinedSentiment& c);
std::string_view polarity_name(Polarity p);

// "undefined" or the integer.
std::string to_string(const CombinedSentiment& c);
std::optional<CombinedSentiment> parse_combined(std::string_view s);

}  // namespace appemo
