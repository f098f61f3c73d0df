#pragma once

// Line-delimited JSON archive of apps, releases, reviews and their scores.
// One entity per line, tagged by "type": app, release, review, score.
// Score lines reference their review by (app_id, review_id).

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "appemo/model.hpp"

namespace appemo {

struct Archive {
  std::vector<AppRecord> apps;
  std::vector<Release> releases;
  std::vector<Review> reviews;
  // Either empty or parallel to `reviews` (scored[i].review == reviews[i]).
  std::vector<ScoredReview> scored;

  const AppRecord* find_app(std::string_view app_id) const;
  bool is_scored() const;

  friend bool operator==(const Archive&, const Archive&) = default;
};

class NotScoredError : public std::runtime_error {
 public:
  NotScoredError() : std::runtime_error("archive is not scored: run score first") {}
};

// Throws NotScoredError unless every review carries a score.
void require_scored(const Archive& archive);

// Upserts by app_id. Returns the number of new apps.
std::size_t merge_apps(Archive& archive, std::vector<AppRecord> apps);
// Appends reviews whose (app_id, review_id) is not yet present; returns the
// number appended. Adding reviews drops existing scores.
std::size_t merge_reviews(Archive& archive, std::vector<Review> reviews);
// Appends releases whose (app_id, version) is not yet present.
std::size_t merge_releases(Archive& archive, std::vector<Release> releases);
void merge_archive(Archive& into, const Archive& other);

void write_archive(const Archive& archive, std::ostream& out);

struct ArchiveLoad {
  Archive archive;
  std::size_t skipped = 0;
  std::vector<std::string> problems;
};

// Corrupt lines are skipped and reported. A score whose combined value
// disagrees with combine(positive, negative) counts as corrupt.
ArchiveLoad read_archive(std::istream& in);
ArchiveLoad load_archive(const std::filesystem::path& path);

// Writes to a temporary sibling and renames over `path`.
void persist_archive(const Archive& archive, const std::filesystem::path& path);

// Single-writer guard: holds `<archive>.lock` for its lifetime.
class ArchiveLock {
 public:
  explicit ArchiveLock(const std::filesystem::path& archive);
  ~ArchiveLock();
  ArchiveLock(const ArchiveLock&) = delete;
  ArchiveLock& operator=(const ArchiveLock&) = delete;

 private:
  std::filesystem::path lock_path_;
};

Json to_json(const AppRecord& app);
Json to_json(const Review& review);
Json to_json(const Release& release);
AppRecord app_from_json(const Json& j);
Review review_from_json(const Json& j);
Release release_from_json(const Json& j);

}  // namespace appemo
