#include "appemo/reports.hpp"

#include <cstdio>

#include "appemo/csv.hpp"

namespace appemo::reports {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string fixed6(const std::optional<double>& v) { return v ? fixed6(*v) : std::string(); }

void write_category_summary(std::ostream& out, const std::vector<CategorySummary>& rows,
                            const std::optional<CategorySummary>& overall) {
  out << "category,n_free,n_paid,n_scored,n_undefined,mean,sd,median,"
         "share_positive,share_neutral,share_negative,share_undefined\n";
  const auto row = [&](const CategorySummary& c) {
    csv::write_row(out, {c.category, std::to_string(c.n_free), std::to_string(c.n_paid),
                         std::to_string(c.n_scored), std::to_string(c.n_undefined),
                         fixed6(c.mean), fixed6(c.sd), fixed6(c.median),
                         fixed6(c.shares.positive), fixed6(c.shares.neutral),
                         fixed6(c.shares.negative), fixed6(c.shares.undefined)});
  };
  for (const auto& c : rows) row(c);
  if (overall) row(*overall);
}

void write_correlation(std::ostream& out, std::string_view target, const Correlation& c) {
  out << "target,n,pearson,spearman\n";
  csv::write_row(out, {std::string(target), std::to_string(c.n), fixed6(c.pearson),
                       fixed6(c.spearman)});
}

void write_rating_boxes(std::ostream& out, const std::array<StarBucket, 5>& buckets) {
  out << "stars,n,min,lower_whisker,q1,median,q3,upper_whisker,max,outliers,"
         "strongly_negative\n";
  for (const auto& b : buckets) {
    if (!b.box) {
      csv::write_row(out, {std::to_string(b.stars), "0", "", "", "", "", "", "", "", "", "0"});
      continue;
    }
    const auto& f = *b.box;
    csv::write_row(out, {std::to_string(b.stars), std::to_string(b.n), fixed6(f.min),
                         fixed6(f.lower_whisker), fixed6(f.q1), fixed6(f.median),
                         fixed6(f.q3), fixed6(f.upper_whisker), fixed6(f.max),
                         std::to_string(f.n_outliers), std::to_string(b.n_strongly_negative)});
  }
}

void write_dispersion(std::ostream& out, const std::map<Topic, DispersionStats>& rows) {
  out << "topic,n,range,iqr,sd\n";
  for (const auto& [topic, d] : rows) {
    csv::write_row(out, {std::string(topic_name(topic)), std::to_string(d.n), fixed6(d.range),
                         fixed6(d.iqr), fixed6(d.sd)});
  }
}

void write_timeline(std::ostream& out, const WeeklySeries& series) {
  out << "week,mean,n,mean_length,releases\n";
  std::map<int, std::string> releases;
  for (const auto& r : series.releases) {
    auto& cell = releases[r.week_index];
    if (!cell.empty()) cell += ';';
    cell += r.version;
  }
  for (const auto& p : series.points) {
    const auto it = releases.find(p.week_index);
    csv::write_row(out, {std::to_string(p.week_index + 1), fixed6(p.mean),
                         std::to_string(p.n_reviews), fixed6(p.mean_length),
                         it == releases.end() ? std::string() : it->second});
  }
}

void write_patterns(std::ostream& out,
                    const std::vector<std::pair<std::string, std::set<PatternLabel>>>& rows) {
  out << "app_id,labels\n";
  for (const auto& [app, labels] : rows) {
    std::string joined;
    for (const auto l : labels) {
      if (!joined.empty()) joined += ';';
      joined += pattern_name(l);
    }
    csv::write_row(out, {app, joined});
  }
}

void write_release_impact(std::ostream& out, const ReleaseImpact& r) {
  out << "metric,pre,post\n";
  csv::write_row(out, {"weeks", std::to_string(r.pre_weeks), std::to_string(r.post_weeks)});
  csv::write_row(out, {"mean_sentiment", fixed6(r.pre_mean), fixed6(r.post_mean)});
  csv::write_row(out, {"reviews_per_week", fixed6(r.pre_volume), fixed6(r.post_volume)});
  csv::write_row(out, {"mean_length", fixed6(r.pre_length), fixed6(r.post_length)});
  csv::write_row(out, {"delta", fixed6(r.delta), ""});
  csv::write_row(out, {"truncated", r.truncated ? "true" : "false", ""});
}

}  // namespace appemo::reports
