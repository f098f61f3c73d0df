#include "support.hpp"

#include <httplib.h>

#include <cstdlib>
#include <unistd.h>

namespace appemo::testing {

std::filesystem::path data_dir() { return APPEMO_DATA_DIR; }

const Lexicon& seed_lexicon() {
  static const Lexicon lex = load_lexicon_manifest(data_dir() / "lexicon" / "manifest.tsv").lexicon;
  return lex;
}

TempDir::TempDir() {
  std::string tmpl = (std::filesystem::temp_directory_path() / "appemo-XXXXXX").string();
  if (!::mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

StubStore::StubStore() : server_(std::make_unique<httplib::Server>()) {
  server_->Get("/lookup", [this](const httplib::Request& req, httplib::Response& res) {
    ++requests_;
    std::lock_guard lock(mu_);
    if (failures_left_ > 0) {
      --failures_left_;
      res.status = failure_status_;
      return;
    }
    const auto id = req.get_param_value("id");
    Json doc{{"resultCount", 0}, {"results", Json::array()}};
    if (const auto it = apps_.find(id); it != apps_.end()) {
      doc["resultCount"] = 1;
      doc["results"].push_back(it->second);
    }
    res.set_content(doc.dump(), "application/json");
  });
  server_->Get("/reviews", [this](const httplib::Request& req, httplib::Response& res) {
    ++requests_;
    std::lock_guard lock(mu_);
    if (failures_left_ > 0) {
      --failures_left_;
      res.status = failure_status_;
      return;
    }
    const auto id = req.get_param_value("id");
    const std::size_t page = std::stoul(req.get_param_value("page"));
    Json doc{{"reviews", Json::array()}, {"next_page", nullptr}};
    if (const auto it = reviews_.find(id); it != reviews_.end()) {
      const auto& [entries, page_size] = it->second;
      const std::size_t begin = (page - 1) * page_size;
      for (std::size_t i = begin; i < entries.size() && i < begin + page_size; ++i) {
        doc["reviews"].push_back(entries[i]);
      }
      if (begin + page_size < entries.size()) doc["next_page"] = page + 1;
    }
    res.set_content(doc.dump(), "application/json");
  });
  port_ = server_->bind_to_any_port("127.0.0.1");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

StubStore::~StubStore() {
  server_->stop();
  thread_.join();
}

std::string StubStore::base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }

void StubStore::add_app(const std::string& id, Json details) {
  std::lock_guard lock(mu_);
  apps_[id] = std::move(details);
}

void StubStore::set_reviews(const std::string& id, std::vector<Json> entries,
                            std::size_t page_size) {
  std::lock_guard lock(mu_);
  reviews_[id] = {std::move(entries), page_size};
}

void StubStore::fail_next(int count, int status) {
  std::lock_guard lock(mu_);
  failures_left_ = count;
  failure_status_ = status;
}

Json app_details_payload(const std::string& name, const std::string& category, double price,
                         int keys) {
  Json j{{"trackName", name}, {"primaryGenreName", category}, {"price", price},
         {"version", "1.0"}};
  for (int i = static_cast<int>(j.size()); i < keys; ++i) {
    j["field" + std::to_string(i)] = i;
  }
  return j;
}

Json review_entry(const std::string& id, const Date& date, int rating, const std::string& title,
                  const std::string& body) {
  return Json{{"id", id},          {"author", "user" + id},
              {"title", title},    {"body", body},
              {"rating", rating},  {"date", format_date(date)},
              {"helpful_votes", 0}, {"version", "1.0"}};
}

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Archive random_archive(std::mt19937_64& rng, const RandomArchiveOptions& opts) {
  static const std::vector<std::string> words{
      "great", "app", "hate", "crash", "very", "sad", "love", "\"quoted\"", "comma,here",
      "line\nbreak", "caf\xC3\xA9", "\xF0\x9F\x98\x80", "tab\there", "ok", "update", "!!!"};
  static const std::vector<std::string> categories{"Games", "Finance", "Food & Drink", "News"};
  const auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const auto sentence = [&] {
    std::string s;
    const std::size_t n = pick(8);
    for (std::size_t i = 0; i < n; ++i) {
      if (i) s += ' ';
      s += words[pick(words.size())];
    }
    return s;
  };

  Archive ar;
  for (int a = 0; a < opts.apps; ++a) {
    AppRecord app;
    app.app_id = std::to_string(100000 + a);
    app.name = "App " + std::to_string(a) + " " + sentence();
    app.primary_category = categories[pick(categories.size())];
    app.price = pick(3) == 0 ? 0.0 : 0.99 + static_cast<double>(pick(5));
    app.is_free = app.price == 0.0;
    app.current_version = "2." + std::to_string(a);
    app.raw_details = app_details_payload(app.name, app.primary_category, app.price, 44);
    ar.apps.push_back(app);
  }
  for (int r = 0; r < opts.releases && opts.apps > 0; ++r) {
    Release rel;
    rel.app_id = ar.apps[pick(ar.apps.size())].app_id;
    rel.version = "3." + std::to_string(r);
    rel.date = add_days(opts.first_day, static_cast<long>(pick(opts.days)));
    rel.notes = sentence();
    ar.releases.push_back(rel);
  }
  for (int r = 0; r < opts.reviews && opts.apps > 0; ++r) {
    Review rev;
    rev.review_id = "r" + std::to_string(r);
    rev.app_id = ar.apps[pick(ar.apps.size())].app_id;
    rev.author = "author " + std::to_string(pick(1000));
    rev.title = sentence();
    rev.body = sentence();
    rev.rating = 1 + static_cast<int>(pick(5));
    rev.date = add_days(opts.first_day, static_cast<long>(pick(opts.days)));
    rev.helpful_votes = static_cast<std::int64_t>(pick(4));
    rev.app_version = "2." + std::to_string(pick(3));
    rev.raw = Json{{"id", rev.review_id}, {"extra", unit_uniform(rng)}};
    ar.reviews.push_back(rev);
  }
  if (opts.scored) {
    for (const auto& rev : ar.reviews) {
      SentimentScore s{1 + static_cast<int>(pick(5)), -1 - static_cast<int>(pick(5))};
      ar.scored.push_back({rev, s, combine(s)});
    }
  }
  return ar;
}

WeeklySeries series_from_means(const std::vector<double>& means) {
  WeeklySeries s;
  s.app_id = "synthetic";
  s.start = Date{std::chrono::year(2016), std::chrono::January, std::chrono::day(4)};
  for (std::size_t i = 0; i < means.size(); ++i) {
    s.points.push_back({static_cast<int>(i), means[i], 1, 100.0});
  }
  return s;
}

std::vector<double> noise(std::uint64_t seed, std::size_t n, double amplitude) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = (2 * unit_uniform(rng) - 1) * amplitude;
  return out;
}

}  // namespace appemo::testing
