#pragma once

// Weekly sentiment series per app and their classification into recurring
// emotion patterns.

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "appemo/archive.hpp"

namespace appemo {

struct WeekPoint {
  int week_index = 0;
  std::optional<double> mean;         // mean combined sentiment
  std::size_t n_reviews = 0;          // reviews with a defined sentiment
  std::optional<double> mean_length;  // characters, over the same reviews
};

struct ReleaseMark {
  int week_index = 0;
  std::string version;
};

struct WeeklySeries {
  std::string app_id;
  Date start{};
  std::vector<WeekPoint> points;  // one per week, including empty weeks
  std::vector<ReleaseMark> releases;
};

class TemporalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientData : public TemporalError {
 public:
  using TemporalError::TemporalError;
};

// Week k covers days [start + 7k, start + 7k + 6]; the last week is the one
// containing `end`. Reviews and releases outside [start, end] are ignored.
WeeklySeries weekly_aggregate(std::span<const ScoredReview> reviews,
                              std::span<const Release> releases, std::string_view app_id,
                              Date start, Date end);
// Throws NotScoredError, or TemporalError when the app is unknown.
WeeklySeries weekly_aggregate(const Archive& archive, std::string_view app_id, Date start,
                              Date end);

enum class PatternLabel {
  ConsistentEmotion,
  InconsistentEmotion,
  SentimentDrop,
  SentimentJump,
  SteadyDecrease,
  SteadyIncrease,
};

std::string_view pattern_name(PatternLabel p);

struct PatternConfig {
  double jump_threshold = 2.0;     // combined units between adjacent windows
  int window = 3;                  // weeks per window
  double slope_threshold = 0.03;   // per week
  double fit_threshold = 0.8;      // minimum R^2 of the linear trend
  double low_variance = 0.5;       // SD ceiling for a consistent series
  std::size_t min_weekly_reviews = 1;
  std::size_t min_points = 8;

  // Throws std::invalid_argument.
  void validate() const;
};

// Labels computed over the weekly means of weeks with at least
// min_weekly_reviews reviews (empty weeks are skipped, never filled):
//   SentimentJump/Drop  some pair of adjacent windows differs by >= jump_threshold
//   SteadyIncrease/Decrease  |OLS slope| >= slope_threshold with R^2 >= fit_threshold
//   ConsistentEmotion   SD <= low_variance and no jump or drop
//   InconsistentEmotion none of the above
// Throws InsufficientData below min_points usable weeks.
std::set<PatternLabel> classify_patterns(const WeeklySeries& series,
                                         const PatternConfig& config = {});

struct ReleaseImpact {
  std::optional<double> pre_mean, post_mean, delta;  // review-weighted sentiment
  double pre_volume = 0, post_volume = 0;            // reviews per week
  std::optional<double> pre_length, post_length;     // review-weighted characters
  int pre_weeks = 0, post_weeks = 0;
  bool truncated = false;  // a window was cut at the series boundary
};

// Compares the `window` weeks before `release_week` with the `window` weeks
// starting at it.
ReleaseImpact release_impact(const WeeklySeries& series, int release_week, int window);

// Apps with more than `min_reviews` reviews dated within [start, end].
std::vector<std::string> qualifying_apps(const Archive& archive, Date start, Date end,
                                         std::size_t min_reviews);

}  // namespace appemo
