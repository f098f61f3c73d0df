#include "appemo/analytics.hpp"

#include <algorithm>

#include "appemo/csv.hpp"
#include "appemo/text.hpp"

namespace appemo {

namespace {

struct Accumulator {
  std::size_t n_free = 0, n_paid = 0;
  std::size_t pos = 0, neu = 0, neg = 0, undef = 0;
  std::vector<double> values;

  void add(const ScoredReview& s, bool is_free) {
    (is_free ? n_free : n_paid)++;
    switch (polarity_class(s.combined)) {
      case Polarity::Positive: ++pos; break;
      case Polarity::Neutral: ++neu; break;
      case Polarity::Negative: ++neg; break;
      case Polarity::Undefined: ++undef; break;
    }
    if (s.combined.defined()) values.push_back(s.combined.value());
  }

  CategorySummary finish(std::string category) const {
    CategorySummary c;
    c.category = std::move(category);
    c.n_free = n_free;
    c.n_paid = n_paid;
    c.n_scored = values.size();
    c.n_undefined = undef;
    const double total = static_cast<double>(n_free + n_paid);
    if (total > 0) {
      c.shares = {pos / total, neu / total, neg / total, undef / total};
    }
    if (!values.empty()) {
      c.mean = stats::mean(values);
      c.sd = stats::sample_sd(values);
      c.median = stats::median(values);
    }
    return c;
  }
};

const AppRecord& app_of(const Archive& archive, const Review& r) {
  const AppRecord* app = archive.find_app(r.app_id);
  if (!app) {
    throw AnalyticsError("review " + r.review_id + " belongs to unknown app " + r.app_id +
                         "; ingest its details first");
  }
  return *app;
}

bool keep(const CombinedSentiment& c, const CorrelationOptions& opts) {
  if (!c.defined()) return false;
  return opts.include_neutral || c.value() != 0;
}

Correlation correlate(const std::vector<double>& xs, const std::vector<double>& ys) {
  return {stats::pearson(xs, ys), stats::spearman(xs, ys), xs.size()};
}

}  // namespace

std::vector<CategorySummary> summarize_by_category(const Archive& archive) {
  require_scored(archive);
  std::map<std::string, Accumulator> by_category;
  for (const auto& s : archive.scored) {
    const AppRecord& app = app_of(archive, s.review);
    by_category[app.primary_category].add(s, app.is_free);
  }
  std::vector<CategorySummary> out;
  out.reserve(by_category.size());
  for (const auto& [category, acc] : by_category) out.push_back(acc.finish(category));
  return out;
}

CategorySummary summarize_overall(const Archive& archive) {
  require_scored(archive);
  Accumulator acc;
  for (const auto& s : archive.scored) acc.add(s, app_of(archive, s.review).is_free);
  return acc.finish("all");
}

Correlation sentiment_vs_rating(const Archive& archive, CorrelationOptions opts) {
  require_scored(archive);
  std::vector<double> xs, ys;
  for (const auto& s : archive.scored) {
    if (!keep(s.combined, opts)) continue;
    xs.push_back(s.review.rating);
    ys.push_back(s.combined.value());
  }
  return correlate(xs, ys);
}

Correlation sentiment_vs_price(const Archive& archive, CorrelationOptions opts) {
  require_scored(archive);
  std::vector<double> xs, ys;
  for (const auto& s : archive.scored) {
    if (!keep(s.combined, opts)) continue;
    xs.push_back(app_of(archive, s.review).price);
    ys.push_back(s.combined.value());
  }
  return correlate(xs, ys);
}

std::array<StarBucket, 5> sentiment_by_rating(const Archive& archive) {
  require_scored(archive);
  std::array<std::vector<double>, 5> values;
  std::array<StarBucket, 5> out;
  for (int i = 0; i < 5; ++i) out[i].stars = i + 1;
  for (const auto& s : archive.scored) {
    if (!s.combined.defined()) continue;
    const int idx = s.review.rating - 1;
    values[idx].push_back(s.combined.value());
    if (s.combined.value() <= -4) ++out[idx].n_strongly_negative;
  }
  for (int i = 0; i < 5; ++i) {
    out[i].n = values[i].size();
    if (!values[i].empty()) out[i].box = stats::five_number_summary(values[i]);
  }
  return out;
}

std::string_view topic_name(Topic t) {
  switch (t) {
    case Topic::BugReport: return "BugReport";
    case Topic::FeatureRequest: return "FeatureRequest";
    case Topic::UserExperience: return "UserExperience";
    case Topic::Rating: return "Rating";
  }
  return "";
}

std::optional<Topic> parse_topic(std::string_view s) {
  std::string key;
  for (char c : text::ascii_lower(text::trim(s))) {
    if (c != ' ' && c != '_' && c != '-') key += c;
  }
  for (Topic t : kAllTopics) {
    if (text::ascii_lower(topic_name(t)) == key) return t;
  }
  return std::nullopt;
}

std::map<Topic, DispersionStats> dispersion_by_topic(
    std::span<const std::pair<Topic, CombinedSentiment>> labeled) {
  std::map<Topic, std::vector<double>> values;
  for (const auto& [topic, c] : labeled) {
    if (c.defined()) values[topic].push_back(c.value());
  }
  std::map<Topic, DispersionStats> out;
  for (auto& [topic, v] : values) {
    std::sort(v.begin(), v.end());
    DispersionStats d;
    d.n = v.size();
    d.range = v.back() - v.front();
    d.iqr = stats::quantile_sorted(v, 0.75) - stats::quantile_sorted(v, 0.25);
    d.sd = stats::sample_sd(v);
    out.emplace(topic, d);
  }
  return out;
}

LabeledImport load_labeled_topics(std::istream& in) {
  LabeledImport out;
  csv::Reader reader(in);
  const auto header = reader.next();
  if (!header) return out;
  std::vector<std::string> got;
  for (const auto& f : header->fields) got.push_back(text::ascii_lower(text::trim(f)));
  if (got != std::vector<std::string>{"id", "topic", "title", "body"}) {
    out.rejections.push_back({header->line, "expected header id,topic,title,body"});
    return out;
  }
  while (auto rec = reader.next()) {
    if (rec->fields.size() != 4) {
      out.rejections.push_back({rec->line, "expected 4 fields, got " +
                                               std::to_string(rec->fields.size())});
      continue;
    }
    const auto topic = parse_topic(rec->fields[1]);
    if (!topic) {
      out.rejections.push_back({rec->line, "unknown topic '" + rec->fields[1] + "'"});
      continue;
    }
    out.rows.push_back({rec->fields[0], *topic, rec->fields[2], rec->fields[3]});
  }
  return out;
}

}  // namespace appemo
