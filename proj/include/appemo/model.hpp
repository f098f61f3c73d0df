#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "appemo/combine.hpp"
#include "appemo/dates.hpp"

namespace appemo {

using Json = nlohmann::json;

struct AppRecord {
  std::string app_id;
  std::string name;
  std::string primary_category;
  double price = 0.0;
  bool is_free = true;
  std::string current_version;
  // Verbatim store payload.
  Json raw_details = Json::object();

  friend bool operator==(const AppRecord&, const AppRecord&) = default;
};

struct Review {
  std::string review_id;
  std::string app_id;
  std::string author;
  std::string title;
  std::string body;
  int rating = 0;  // stars, 1..5
  Date date{};
  std::int64_t helpful_votes = 0;
  std::string app_version;
  Json raw = Json::object();

  // Title and body joined the way they are scored and measured.
  std::string text() const { return title + " " + body; }

  friend bool operator==(const Review&, const Review&) = default;
};

struct Release {
  std::string app_id;
  std::string version;
  Date date{};
  std::string notes;

  friend bool operator==(const Release&, const Release&) = default;
};

struct ScoredReview {
  Review review;
  SentimentScore score;
  CombinedSentiment combined = CombinedSentiment::undefined();

  friend bool operator==(const ScoredReview&, const ScoredReview&) = default;
};

// Throws std::invalid_argument describing the first violated invariant.
void validate(const AppRecord& app);
void validate(const Review& review);

// Length in characters of title + body, as used for length statistics.
std::size_t review_length(const Review& review);

}  // namespace appemo
