#include "appemo/archive.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <utility>

namespace appemo {

namespace {

using Key = std::pair<std::string, std::string>;

Date date_field(const Json& j, const char* key) {
  const auto d = parse_date(j.at(key).get<std::string>());
  if (!d) throw std::invalid_argument(std::string("bad date in field ") + key);
  return *d;
}

Json score_json(const ScoredReview& s) {
  Json j;
  j["type"] = "score";
  j["app_id"] = s.review.app_id;
  j["review_id"] = s.review.review_id;
  j["positive"] = s.score.positive;
  j["negative"] = s.score.negative;
  if (s.combined.defined()) {
    j["combined"] = s.combined.value();
  } else {
    j["combined"] = "undefined";
  }
  return j;
}

}  // namespace

const AppRecord* Archive::find_app(std::string_view app_id) const {
  for (const auto& a : apps) {
    if (a.app_id == app_id) return &a;
  }
  return nullptr;
}

bool Archive::is_scored() const { return scored.size() == reviews.size(); }

void require_scored(const Archive& archive) {
  if (!archive.is_scored()) throw NotScoredError();
}

std::size_t merge_apps(Archive& archive, std::vector<AppRecord> apps) {
  std::size_t added = 0;
  for (auto& app : apps) {
    auto it = std::find_if(archive.apps.begin(), archive.apps.end(),
                           [&](const AppRecord& a) { return a.app_id == app.app_id; });
    if (it != archive.apps.end()) {
      *it = std::move(app);
    } else {
      archive.apps.push_back(std::move(app));
      ++added;
    }
  }
  return added;
}

std::size_t merge_reviews(Archive& archive, std::vector<Review> reviews) {
  std::set<Key> present;
  for (const auto& r : archive.reviews) present.emplace(r.app_id, r.review_id);
  std::size_t added = 0;
  for (auto& r : reviews) {
    if (!present.emplace(r.app_id, r.review_id).second) continue;
    archive.reviews.push_back(std::move(r));
    ++added;
  }
  if (added) archive.scored.clear();
  return added;
}

std::size_t merge_releases(Archive& archive, std::vector<Release> releases) {
  std::set<Key> present;
  for (const auto& r : archive.releases) present.emplace(r.app_id, r.version);
  std::size_t added = 0;
  for (auto& r : releases) {
    if (!present.emplace(r.app_id, r.version).second) continue;
    archive.releases.push_back(std::move(r));
    ++added;
  }
  return added;
}

void merge_archive(Archive& into, const Archive& other) {
  const bool keep_scores = into.is_scored() && other.is_scored();
  std::vector<ScoredReview> incoming_scores;
  if (keep_scores) {
    std::set<Key> present;
    for (const auto& r : into.reviews) present.emplace(r.app_id, r.review_id);
    for (const auto& s : other.scored) {
      if (present.emplace(s.review.app_id, s.review.review_id).second) {
        incoming_scores.push_back(s);
      }
    }
  }
  merge_apps(into, other.apps);
  merge_releases(into, other.releases);
  auto scored = std::move(into.scored);
  const std::size_t added = merge_reviews(into, other.reviews);
  if (keep_scores) {
    scored.insert(scored.end(), incoming_scores.begin(), incoming_scores.end());
    into.scored = std::move(scored);
  } else if (added == 0) {
    into.scored = std::move(scored);
  }
}

Json to_json(const AppRecord& app) {
  return Json{{"type", "app"},
              {"app_id", app.app_id},
              {"name", app.name},
              {"primary_category", app.primary_category},
              {"price", app.price},
              {"is_free", app.is_free},
              {"current_version", app.current_version},
              {"raw_details", app.raw_details}};
}

Json to_json(const Review& r) {
  return Json{{"type", "review"},
              {"review_id", r.review_id},
              {"app_id", r.app_id},
              {"author", r.author},
              {"title", r.title},
              {"body", r.body},
              {"rating", r.rating},
              {"date", format_date(r.date)},
              {"helpful_votes", r.helpful_votes},
              {"app_version", r.app_version},
              {"raw", r.raw}};
}

Json to_json(const Release& r) {
  return Json{{"type", "release"},
              {"app_id", r.app_id},
              {"version", r.version},
              {"date", format_date(r.date)},
              {"notes", r.notes}};
}

AppRecord app_from_json(const Json& j) {
  AppRecord a;
  a.app_id = j.at("app_id").get<std::string>();
  a.name = j.at("name").get<std::string>();
  a.primary_category = j.at("primary_category").get<std::string>();
  a.price = j.at("price").get<double>();
  a.is_free = j.at("is_free").get<bool>();
  a.current_version = j.at("current_version").get<std::string>();
  a.raw_details = j.at("raw_details");
  validate(a);
  return a;
}

Review review_from_json(const Json& j) {
  Review r;
  r.review_id = j.at("review_id").get<std::string>();
  r.app_id = j.at("app_id").get<std::string>();
  r.author = j.at("author").get<std::string>();
  r.title = j.at("title").get<std::string>();
  r.body = j.at("body").get<std::string>();
  r.rating = j.at("rating").get<int>();
  r.date = date_field(j, "date");
  r.helpful_votes = j.at("helpful_votes").get<std::int64_t>();
  r.app_version = j.at("app_version").get<std::string>();
  r.raw = j.at("raw");
  validate(r);
  return r;
}

Release release_from_json(const Json& j) {
  Release r;
  r.app_id = j.at("app_id").get<std::string>();
  r.version = j.at("version").get<std::string>();
  r.date = date_field(j, "date");
  r.notes = j.at("notes").get<std::string>();
  if (r.app_id.empty() || r.version.empty()) {
    throw std::invalid_argument("release without app_id or version");
  }
  return r;
}

void write_archive(const Archive& archive, std::ostream& out) {
  for (const auto& a : archive.apps) out << to_json(a).dump() << '\n';
  for (const auto& r : archive.releases) out << to_json(r).dump() << '\n';
  for (const auto& r : archive.reviews) out << to_json(r).dump() << '\n';
  if (archive.is_scored()) {
    for (const auto& s : archive.scored) out << score_json(s).dump() << '\n';
  }
}

ArchiveLoad read_archive(std::istream& in) {
  ArchiveLoad result;
  Archive& ar = result.archive;
  struct PendingScore {
    SentimentScore score;
    CombinedSentiment combined;
  };
  std::map<Key, PendingScore> scores;
  std::set<Key> review_keys;
  std::set<std::string> app_ids;
  std::set<Key> release_keys;

  const auto skip = [&](std::size_t line, const std::string& why) {
    ++result.skipped;
    result.problems.push_back("line " + std::to_string(line) + ": " + why);
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    try {
      const Json j = Json::parse(raw);
      const std::string type = j.at("type").get<std::string>();
      if (type == "app") {
        auto a = app_from_json(j);
        if (!app_ids.insert(a.app_id).second) {
          skip(line_no, "duplicate app " + a.app_id);
          continue;
        }
        ar.apps.push_back(std::move(a));
      } else if (type == "release") {
        auto r = release_from_json(j);
        if (!release_keys.emplace(r.app_id, r.version).second) {
          skip(line_no, "duplicate release " + r.app_id + " " + r.version);
          continue;
        }
        ar.releases.push_back(std::move(r));
      } else if (type == "review") {
        auto r = review_from_json(j);
        if (!review_keys.emplace(r.app_id, r.review_id).second) {
          skip(line_no, "duplicate review " + r.app_id + "/" + r.review_id);
          continue;
        }
        ar.reviews.push_back(std::move(r));
      } else if (type == "score") {
        SentimentScore s{j.at("positive").get<int>(), j.at("negative").get<int>()};
        if (!s.valid()) {
          skip(line_no, "score out of range");
          continue;
        }
        const Json& c = j.at("combined");
        const auto combined = c.is_string() ? parse_combined(c.get<std::string>())
                                            : parse_combined(std::to_string(c.get<int>()));
        if (!combined || !(*combined == combine(s))) {
          skip(line_no, "combined sentiment does not match its score");
          continue;
        }
        Key key{j.at("app_id").get<std::string>(), j.at("review_id").get<std::string>()};
        scores.insert_or_assign(std::move(key), PendingScore{s, *combined});
      } else {
        skip(line_no, "unknown record type '" + type + "'");
      }
    } catch (const std::exception& e) {
      skip(line_no, e.what());
    }
  }

  if (!scores.empty()) {
    std::vector<ScoredReview> scored;
    scored.reserve(ar.reviews.size());
    for (const auto& r : ar.reviews) {
      const auto it = scores.find({r.app_id, r.review_id});
      if (it == scores.end()) break;
      scored.push_back({r, it->second.score, it->second.combined});
      scores.erase(it);
    }
    if (scored.size() == ar.reviews.size()) {
      ar.scored = std::move(scored);
      for (const auto& [key, _] : scores) {
        ++result.skipped;
        result.problems.push_back("score for unknown review " + key.first + "/" + key.second);
      }
    } else {
      result.problems.push_back("archive is only partially scored; scores dropped");
    }
  }
  return result;
}

ArchiveLoad load_archive(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open archive " + path.string());
  return read_archive(in);
}

void persist_archive(const Archive& archive, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    write_archive(archive, out);
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

ArchiveLock::ArchiveLock(const std::filesystem::path& archive) : lock_path_(archive) {
  lock_path_ += ".lock";
  const int fd = ::open(lock_path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    if (errno == EEXIST) {
      throw std::runtime_error("archive is locked by another writer: " + lock_path_.string());
    }
    throw std::runtime_error("cannot create lock " + lock_path_.string() + ": " +
                             std::strerror(errno));
  }
  const std::string pid = std::to_string(::getpid()) + "\n";
  [[maybe_unused]] auto n = ::write(fd, pid.data(), pid.size());
  ::close(fd);
}

ArchiveLock::~ArchiveLock() {
  std::error_code ec;
  std::filesystem::remove(lock_path_, ec);
}

}  // namespace appemo
