#pragma once

// CSV report writers. Real numbers are printed with 6 decimals; absent
// values are empty fields.

#include <array>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "appemo/analytics.hpp"
#include "appemo/temporal.hpp"

namespace appemo::reports {

std::string fixed6(double v);
std::string fixed6(const std::optional<double>& v);

// category,n_free,n_paid,n_scored,n_undefined,mean,sd,median,
// share_positive,share_neutral,share_negative,share_undefined
void write_category_summary(std::ostream& out, const std::vector<CategorySummary>& rows,
                            const std::optional<CategorySummary>& overall);

// target,n,pearson,spearman
void write_correlation(std::ostream& out, std::string_view target, const Correlation& c);

// stars,n,min,lower_whisker,q1,median,q3,upper_whisker,max,outliers,strongly_negative
void write_rating_boxes(std::ostream& out, const std::array<StarBucket, 5>& buckets);

// topic,n,range,iqr,sd
void write_dispersion(std::ostream& out, const std::map<Topic, DispersionStats>& rows);

// week,mean,n,mean_length,releases  (week is 1-based; releases ';'-joined)
void write_timeline(std::ostream& out, const WeeklySeries& series);

// app_id,labels  (labels ';'-joined)
void write_patterns(std::ostream& out,
                    const std::vector<std::pair<std::string, std::set<PatternLabel>>>& rows);

// metric,pre,post
void write_release_impact(std::ostream& out, const ReleaseImpact& impact);

}  // namespace appemo::reports
