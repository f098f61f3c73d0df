#pragma once

// Shared fixtures for the unit and acceptance suites.

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "appemo/archive.hpp"
#include "appemo/lexicon.hpp"
#include "appemo/temporal.hpp"

namespace httplib {
class Server;
}

namespace appemo::testing {

std::filesystem::path data_dir();
const Lexicon& seed_lexicon();

// Deleted on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// In-process HTTP server implementing the store wire contract.
class StubStore {
 public:
  StubStore();
  ~StubStore();
  StubStore(const StubStore&) = delete;
  StubStore& operator=(const StubStore&) = delete;

  std::string base_url() const;

  void add_app(const std::string& id, Json details);
  // Entries newest first; served in pages of `page_size`.
  void set_reviews(const std::string& id, std::vector<Json> entries, std::size_t page_size = 50);
  // The next `count` requests answer with `status`.
  void fail_next(int count, int status);
  int requests() const { return requests_.load(); }

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
  std::mutex mu_;
  std::map<std::string, Json> apps_;
  std::map<std::string, std::pair<std::vector<Json>, std::size_t>> reviews_;
  int failures_left_ = 0;
  int failure_status_ = 503;
  std::atomic<int> requests_{0};
};

// A lookup result with `keys` fields (trackName, primaryGenreName, price,
// version plus filler keys).
Json app_details_payload(const std::string& name, const std::string& category, double price,
                         int keys = 44);
Json review_entry(const std::string& id, const Date& date, int rating, const std::string& title,
                  const std::string& body);

struct RandomArchiveOptions {
  int apps = 3;
  int reviews = 60;
  bool scored = true;
  int releases = 4;
  Date first_day{std::chrono::year(2016), std::chrono::January, std::chrono::day(4)};
  int days = 120;
};

// Arbitrary valid archive; texts include punctuation, quotes, line breaks
// and non-ASCII characters. Scores are drawn uniformly over valid pairs.
Archive random_archive(std::mt19937_64& rng, const RandomArchiveOptions& opts = {});

// Uniform double in [0,1) from the raw engine output (platform independent).
double unit_uniform(std::mt19937_64& rng);

// One review per week with the given mean; week i has index i.
WeeklySeries series_from_means(const std::vector<double>& means);
// Independent uniform draws on [-amplitude, amplitude].
std::vector<double> noise(std::uint64_t seed, std::size_t n, double amplitude);

}  // namespace appemo::testing
