#pragma once

// Corpus-level analyses over a scored archive: per-category summaries,
// sentiment/rating and sentiment/price correlation, per-star box plots and
// dispersion per review topic. Undefined sentiments are excluded from every
// statistic but counted in polarity shares.

#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "appemo/archive.hpp"
#include "appemo/statistics.hpp"

namespace appemo {

class AnalyticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PolarityShares {
  double positive = 0, neutral = 0, negative = 0, undefined = 0;
};

struct CategorySummary {
  std::string category;
  std::size_t n_free = 0;  // reviews of free apps
  std::size_t n_paid = 0;  // reviews of paid apps
  std::size_t n_scored = 0;
  std::size_t n_undefined = 0;
  std::optional<double> mean, sd, median;  // absent when n_scored == 0
  PolarityShares shares;

  std::size_t total() const { return n_free + n_paid; }
};

// One row per primary category, ordered by name. Throws NotScoredError for
// an unscored archive and AnalyticsError for a review of an unknown app.
std::vector<CategorySummary> summarize_by_category(const Archive& archive);
// The same statistics over the whole archive, category "all".
CategorySummary summarize_overall(const Archive& archive);

struct CorrelationOptions {
  bool include_neutral = true;
};

struct Correlation {
  double pearson = 0;
  double spearman = 0;
  std::size_t n = 0;
};

// Review-level pairs (rating, combined). Throws stats::StatsError when the
// coefficients are undefined.
Correlation sentiment_vs_rating(const Archive& archive, CorrelationOptions opts = {});
// Review-level pairs (app price, combined).
Correlation sentiment_vs_price(const Archive& archive, CorrelationOptions opts = {});

struct StarBucket {
  int stars = 0;
  std::size_t n = 0;
  std::optional<stats::FiveNumber> box;  // absent for an empty bucket
  std::size_t n_strongly_negative = 0;   // combined <= -4
};

std::array<StarBucket, 5> sentiment_by_rating(const Archive& archive);

enum class Topic { BugReport, FeatureRequest, UserExperience, Rating };

inline constexpr std::array<Topic, 4> kAllTopics{Topic::BugReport, Topic::FeatureRequest,
                                                 Topic::UserExperience, Topic::Rating};

std::string_view topic_name(Topic t);
// Accepts the names above, case-insensitively, with or without separators
// ("BugReport", "bug report", "bug_report").
std::optional<Topic> parse_topic(std::string_view s);

struct DispersionStats {
  std::size_t n = 0;
  double range = 0;
  double iqr = 0;
  double sd = 0;
};

// Topics with no defined sentiment are left out of the result.
std::map<Topic, DispersionStats> dispersion_by_topic(
    std::span<const std::pair<Topic, CombinedSentiment>> labeled);

struct LabeledReview {
  std::string id;
  Topic topic;
  std::string title;
  std::string body;
};

struct LabeledImport {
  std::vector<LabeledReview> rows;
  struct Rejection {
    std::size_t line;
    std::string message;
  };
  std::vector<Rejection> rejections;
};

// CSV `id,topic,title,body` with a header row.
LabeledImport load_labeled_topics(std::istream& in);

}  // namespace appemo
