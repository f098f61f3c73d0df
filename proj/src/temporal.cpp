#include "appemo/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "appemo/statistics.hpp"

namespace appemo {

namespace {

std::vector<double> window_means(const std::vector<double>& m, int w) {
  // prefix sums over the usable weekly means
  std::vector<double> prefix(m.size() + 1, 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) prefix[i + 1] = prefix[i] + m[i];
  std::vector<double> diffs;
  const std::size_t uw = static_cast<std::size_t>(w);
  // t is the last index of the earlier window.
  for (std::size_t t = uw - 1; t + uw < m.size(); ++t) {
    const double before = (prefix[t + 1] - prefix[t + 1 - uw]) / w;
    const double after = (prefix[t + 1 + uw] - prefix[t + 1]) / w;
    diffs.push_back(after - before);
  }
  return diffs;
}

}  // namespace

WeeklySeries weekly_aggregate(std::span<const ScoredReview> reviews,
                              std::span<const Release> releases, std::string_view app_id,
                              Date start, Date end) {
  const long span_days = days_between(start, end);
  if (span_days < 0) throw TemporalError("window start is after its end");
  const int n_weeks = static_cast<int>(span_days / 7) + 1;

  std::vector<double> sum(n_weeks, 0.0);
  std::vector<double> length_sum(n_weeks, 0.0);
  std::vector<std::size_t> count(n_weeks, 0);
  for (const auto& s : reviews) {
    if (s.review.app_id != app_id || !s.combined.defined()) continue;
    const long day = days_between(start, s.review.date);
    if (day < 0 || day > span_days) continue;
    const auto w = static_cast<std::size_t>(day / 7);
    sum[w] += s.combined.value();
    length_sum[w] += static_cast<double>(review_length(s.review));
    ++count[w];
  }

  WeeklySeries series;
  series.app_id = std::string(app_id);
  series.start = start;
  series.points.reserve(n_weeks);
  for (int w = 0; w < n_weeks; ++w) {
    WeekPoint p;
    p.week_index = w;
    p.n_reviews = count[w];
    if (count[w] > 0) {
      p.mean = sum[w] / static_cast<double>(count[w]);
      p.mean_length = length_sum[w] / static_cast<double>(count[w]);
    }
    series.points.push_back(p);
  }

  for (const auto& r : releases) {
    if (r.app_id != app_id) continue;
    const long day = days_between(start, r.date);
    if (day < 0 || day > span_days) continue;
    series.releases.push_back({static_cast<int>(day / 7), r.version});
  }
  std::stable_sort(series.releases.begin(), series.releases.end(),
                   [](const ReleaseMark& a, const ReleaseMark& b) {
                     return a.week_index < b.week_index;
                   });
  return series;
}

WeeklySeries weekly_aggregate(const Archive& archive, std::string_view app_id, Date start,
                              Date end) {
  require_scored(archive);
  const bool known =
      archive.find_app(app_id) ||
      std::any_of(archive.reviews.begin(), archive.reviews.end(),
                  [&](const Review& r) { return r.app_id == app_id; });
  if (!known) throw TemporalError("app " + std::string(app_id) + " is not in the archive");
  return weekly_aggregate(archive.scored, archive.releases, app_id, start, end);
}

std::string_view pattern_name(PatternLabel p) {
  switch (p) {
    case PatternLabel::ConsistentEmotion: return "ConsistentEmotion";
    case PatternLabel::InconsistentEmotion: return "InconsistentEmotion";
    case PatternLabel::SentimentDrop: return "SentimentDrop";
    case PatternLabel::SentimentJump: return "SentimentJump";
    case PatternLabel::SteadyDecrease: return "SteadyDecrease";
    case PatternLabel::SteadyIncrease: return "SteadyIncrease";
  }
  return "";
}

void PatternConfig::validate() const {
  if (!(jump_threshold > 0)) throw std::invalid_argument("jump threshold must be > 0");
  if (window < 1) throw std::invalid_argument("window must be >= 1 week");
  if (!(slope_threshold > 0)) throw std::invalid_argument("slope threshold must be > 0");
  if (!(fit_threshold >= 0 && fit_threshold <= 1)) {
    throw std::invalid_argument("fit threshold must be in [0,1]");
  }
  if (!(low_variance >= 0)) throw std::invalid_argument("low-variance SD must be >= 0");
  if (min_points < 2) throw std::invalid_argument("min_points must be >= 2");
}

std::set<PatternLabel> classify_patterns(const WeeklySeries& series,
                                         const PatternConfig& config) {
  config.validate();
  std::vector<double> weeks, means;
  for (const auto& p : series.points) {
    if (!p.mean || p.n_reviews < std::max<std::size_t>(1, config.min_weekly_reviews)) continue;
    weeks.push_back(p.week_index);
    means.push_back(*p.mean);
  }
  if (means.size() < config.min_points) {
    throw InsufficientData("insufficient data: " + std::to_string(means.size()) +
                           " usable weeks, need " + std::to_string(config.min_points));
  }

  std::set<PatternLabel> labels;
  for (double d : window_means(means, config.window)) {
    if (d >= config.jump_threshold) labels.insert(PatternLabel::SentimentJump);
    if (d <= -config.jump_threshold) labels.insert(PatternLabel::SentimentDrop);
  }

  const auto fit = stats::least_squares(weeks, means);
  if (fit.r_squared >= config.fit_threshold) {
    if (fit.slope >= config.slope_threshold) labels.insert(PatternLabel::SteadyIncrease);
    if (fit.slope <= -config.slope_threshold) labels.insert(PatternLabel::SteadyDecrease);
  }

  const bool abrupt = labels.contains(PatternLabel::SentimentJump) ||
                      labels.contains(PatternLabel::SentimentDrop);
  if (!abrupt && stats::sample_sd(means) <= config.low_variance) {
    labels.insert(PatternLabel::ConsistentEmotion);
  }
  if (labels.empty()) labels.insert(PatternLabel::InconsistentEmotion);
  return labels;
}

ReleaseImpact release_impact(const WeeklySeries& series, int release_week, int window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1 week");
  const int n = static_cast<int>(series.points.size());
  if (release_week < 0 || release_week >= n) {
    throw TemporalError("release week " + std::to_string(release_week) + " outside series");
  }

  struct Side {
    double sum = 0, length_sum = 0;
    std::size_t count = 0;
    int weeks = 0;
  };
  const auto collect = [&](int from, int to) {  // [from, to)
    Side s;
    for (int w = std::max(from, 0); w < std::min(to, n); ++w) {
      const auto& p = series.points[w];
      ++s.weeks;
      if (!p.mean) continue;
      const auto k = static_cast<double>(p.n_reviews);
      s.sum += *p.mean * k;
      s.length_sum += p.mean_length.value_or(0.0) * k;
      s.count += p.n_reviews;
    }
    return s;
  };
  const Side pre = collect(release_week - window, release_week);
  const Side post = collect(release_week, release_week + window);

  ReleaseImpact out;
  out.pre_weeks = pre.weeks;
  out.post_weeks = post.weeks;
  out.truncated = pre.weeks < window || post.weeks < window;
  if (pre.weeks) out.pre_volume = static_cast<double>(pre.count) / pre.weeks;
  if (post.weeks) out.post_volume = static_cast<double>(post.count) / post.weeks;
  if (pre.count) {
    out.pre_mean = pre.sum / static_cast<double>(pre.count);
    out.pre_length = pre.length_sum / static_cast<double>(pre.count);
  }
  if (post.count) {
    out.post_mean = post.sum / static_cast<double>(post.count);
    out.post_length = post.length_sum / static_cast<double>(post.count);
  }
  if (out.pre_mean && out.post_mean) out.delta = *out.post_mean - *out.pre_mean;
  return out;
}

std::vector<std::string> qualifying_apps(const Archive& archive, Date start, Date end,
                                         std::size_t min_reviews) {
  std::map<std::string, std::size_t> counts;
  for (const auto& a : archive.apps) counts.emplace(a.app_id, 0);
  const long span_days = days_between(start, end);
  for (const auto& r : archive.reviews) {
    const long day = days_between(start, r.date);
    if (day >= 0 && day <= span_days) ++counts[r.app_id];
  }
  std::vector<std::string> out;
  for (const auto& [id, n] : counts) {
    if (n > min_reviews) out.push_back(id);
  }
  return out;
}

}  // namespace appemo
