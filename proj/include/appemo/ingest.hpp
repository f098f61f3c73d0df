#pragma once

// Store clients: app details (lookup endpoint) and paged review feeds, with
// a rate limit shared by all requests of one client and exponential backoff
// on transient failures. Release notes come from a hand-curated CSV.
//
// Wire contract (relative to the configured base URL):
//   GET /lookup?id=<app>&country=<cc>
//       -> {"resultCount": n, "results": [{...app details...}]}
//   GET /reviews?id=<app>&page=<k>&country=<cc>     (k starts at 1)
//       -> {"reviews": [{id, author, title, body, rating, date,
//                        helpful_votes, version, ...}],
//           "next_page": <k+1 or null>}
// Reviews within the feed are ordered newest first.

#include <chrono>
#include <istream>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "appemo/archive.hpp"
#include "appemo/model.hpp"

namespace appemo {

struct ClientConfig {
  std::string base_url = "https://itunes.apple.com";
  std::string country = "us";
  double rate_limit = 1.0;  // requests per second; <= 0 disables limiting
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds timeout{30};
  int max_pages = 10000;

  // Applies APPEMO_BASE_URL and APPEMO_RATE_LIMIT when set.
  static ClientConfig from_env(ClientConfig base);
  // Throws std::invalid_argument.
  void validate() const;
};

struct HttpResponse {
  int status = 0;  // 0: transport failure
  std::string body;
  std::string error;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  // `target` is a path with query string, relative to the base URL.
  virtual HttpResponse get(const std::string& target) = 0;
};

std::unique_ptr<HttpTransport> make_http_transport(const ClientConfig& config);

class RateLimiter {
 public:
  explicit RateLimiter(double per_second);
  void acquire();

 private:
  std::mutex mu_;
  std::chrono::steady_clock::duration interval_{};
  std::optional<std::chrono::steady_clock::time_point> last_;
};

class FetchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IdError {
  std::string id;
  std::string message;
};

struct AppFetch {
  std::vector<AppRecord> apps;
  std::vector<IdError> errors;
};

struct ReviewFetch {
  std::vector<Review> reviews;
  std::vector<std::string> warnings;  // duplicates, malformed entries
  std::optional<std::string> error;   // set when paging stopped on a failure
  int pages = 0;
};

class StoreClient {
 public:
  explicit StoreClient(ClientConfig config, std::unique_ptr<HttpTransport> transport = nullptr);

  // One AppRecord per resolvable id; per-id failures are collected. Throws
  // FetchError for an empty id list or when every id failed.
  AppFetch fetch_app_details(std::span<const std::string> app_ids);

  // Drains pages until the feed is exhausted or a review older than `since`
  // appears; only reviews dated after `since` are kept. Duplicate ids are
  // dropped with a warning. A persistent failure returns what was gathered.
  ReviewFetch fetch_reviews(const std::string& app_id, std::optional<Date> since = std::nullopt);

  std::size_t requests_made() const { return requests_; }

 private:
  // Retries transient failures (transport errors, 429, 5xx).
  HttpResponse get_with_retry(const std::string& target);

  ClientConfig config_;
  std::unique_ptr<HttpTransport> transport_;
  RateLimiter limiter_;
  std::size_t requests_ = 0;
};

AppRecord app_from_lookup(const std::string& app_id, const Json& result);
Review review_from_feed(const std::string& app_id, const Json& entry);

struct ReleaseImport {
  std::vector<Release> releases;
  struct Rejection {
    std::size_t line;
    std::string message;
  };
  std::vector<Rejection> rejections;
};

// CSV `app_id,version,date,notes` with a header row. Rows with a bad date,
// a duplicate (app_id, version) -- within the file or against `existing` --
// or a date earlier than the app's previous release are rejected.
ReleaseImport import_releases(std::istream& in, std::span<const Release> existing = {});

}  // namespace appemo
