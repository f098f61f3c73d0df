#include "appemo/combine.hpp"

#include <charconv>

namespace appemo {

CombinedSentiment CombinedSentiment::of(int value) {
  if (value < -5 || value > 5) {
    throw ContractViolation("combined sentiment out of range: " +
                            std::to_string(value));
  }
  return CombinedSentiment(value);
}

CombinedSentiment combine(const SentimentScore& score) {
  if (!score.valid()) {
    throw ContractViolation("sentiment score out of range: (" +
                            std::to_string(score.positive) + ", " +
                            std::to_string(score.negative) + ")");
  }
  const int p = score.positive;
  const int n = score.negative;
  if (p + n > 0) return CombinedSentiment::of(p);
  if (p + n < 0) return CombinedSentiment::of(n);
  return p < 4 ? CombinedSentiment::of(0) : CombinedSentiment::undefined();
}

Polarity polarity_class(const CombinedSentiment& c) {
  if (!c.defined()) return Polarity::Undefined;
  if (c.value() > 0) return Polarity::Positive;
  if (c.value() < 0) return Polarity::Negative;
  return Polarity::Neutral;
}

std::string_view polarity_name(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Neutral: return "neutral";
    case Polarity::Negative: return "negative";
    case Polarity::Undefined: return "undefined";
  }
  return "undefined";
}

std::string to_string(const CombinedSentiment& c) {
  return c.defined() ? std::to_string(c.value()) : std::string("undefined");
}

std::optional<CombinedSentiment> parse_combined(std::string_view s) {
  if (s == "undefined") return CombinedSentiment::undefined();
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < -5 || v > 5) {
    return std::nullopt;
  }
  return CombinedSentiment::of(v);
}

}  // namespace appemo
