#include "appemo/ingest.hpp"

#include <httplib.h>

#include <cstdlib>
#include <map>
#include <set>
#include <thread>

#include "appemo/csv.hpp"
#include "appemo/text.hpp"

namespace appemo {

namespace {

class HttplibTransport final : public HttpTransport {
 public:
  explicit HttplibTransport(const ClientConfig& config) {
    // Split "scheme://host:port/prefix" into the client origin and a path prefix.
    const std::string& url = config.base_url;
    const auto scheme_end = url.find("://");
    const auto path_start =
        url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    origin_ = path_start == std::string::npos ? url : url.substr(0, path_start);
    if (path_start != std::string::npos) prefix_ = url.substr(path_start);
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
    client_ = std::make_unique<httplib::Client>(origin_);
    client_->set_connection_timeout(config.timeout);
    client_->set_read_timeout(config.timeout);
    client_->set_follow_location(true);
  }

  HttpResponse get(const std::string& target) override {
    auto res = client_->Get(prefix_ + target);
    if (!res) return {0, {}, httplib::to_string(res.error())};
    return {res->status, res->body, {}};
  }

 private:
  std::string origin_;
  std::string prefix_;
  std::unique_ptr<httplib::Client> client_;
};

bool transient(const HttpResponse& r) {
  return r.status == 0 || r.status == 429 || (r.status >= 500 && r.status <= 599);
}

std::string describe(const HttpResponse& r) {
  if (r.status == 0) return "transport error: " + r.error;
  return "HTTP " + std::to_string(r.status);
}

std::string string_field(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (it->is_string()) return it->get<std::string>();
  return it->dump();
}

std::string id_string(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  return j.dump();
}

std::string url_encode(std::string_view s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (text::is_ascii_alnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  return out;
}

}  // namespace

ClientConfig ClientConfig::from_env(ClientConfig base) {
  if (const char* url = std::getenv("APPEMO_BASE_URL"); url && *url) base.base_url = url;
  if (const char* rate = std::getenv("APPEMO_RATE_LIMIT"); rate && *rate) {
    char* end = nullptr;
    const double v = std::strtod(rate, &end);
    if (end == rate || *end != '\0') {
      throw std::invalid_argument("APPEMO_RATE_LIMIT is not a number: " + std::string(rate));
    }
    base.rate_limit = v;
  }
  return base;
}

void ClientConfig::validate() const {
  if (base_url.empty()) throw std::invalid_argument("base URL is empty");
  if (!base_url.starts_with("http://") && !base_url.starts_with("https://")) {
    throw std::invalid_argument("base URL must start with http:// or https://: " + base_url);
  }
  if (max_retries < 0) throw std::invalid_argument("max_retries must be >= 0");
  if (max_pages < 1) throw std::invalid_argument("max_pages must be >= 1");
}

std::unique_ptr<HttpTransport> make_http_transport(const ClientConfig& config) {
  return std::make_unique<HttplibTransport>(config);
}

RateLimiter::RateLimiter(double per_second) {
  if (per_second > 0) {
    interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / per_second));
  }
}

void RateLimiter::acquire() {
  std::unique_lock lock(mu_);
  const auto now = std::chrono::steady_clock::now();
  if (last_ && interval_.count() > 0) {
    const auto ready = *last_ + interval_;
    if (ready > now) {
      std::this_thread::sleep_until(ready);
      last_ = ready;
      return;
    }
  }
  last_ = now;
}

StoreClient::StoreClient(ClientConfig config, std::unique_ptr<HttpTransport> transport)
    : config_(std::move(config)),
      transport_(transport ? std::move(transport) : make_http_transport(config_)),
      limiter_(config_.rate_limit) {
  config_.validate();
}

HttpResponse StoreClient::get_with_retry(const std::string& target) {
  auto backoff = config_.initial_backoff;
  HttpResponse res;
  for (int attempt = 0;; ++attempt) {
    limiter_.acquire();
    ++requests_;
    res = transport_->get(target);
    if (!transient(res) || attempt >= config_.max_retries) return res;
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
}

AppRecord app_from_lookup(const std::string& app_id, const Json& result) {
  if (!result.is_object()) throw std::invalid_argument("lookup result is not an object");
  AppRecord a;
  a.app_id = app_id;
  a.name = string_field(result, "trackName");
  a.primary_category = string_field(result, "primaryGenreName");
  if (const auto it = result.find("price"); it != result.end() && it->is_number()) {
    a.price = it->get<double>();
  }
  a.is_free = a.price == 0.0;
  a.current_version = string_field(result, "version");
  a.raw_details = result;
  validate(a);
  return a;
}

AppFetch StoreClient::fetch_app_details(std::span<const std::string> app_ids) {
  if (app_ids.empty()) throw FetchError("no ids");
  AppFetch out;
  for (const auto& id : app_ids) {
    const auto res = get_with_retry("/lookup?id=" + url_encode(id) +
                                    "&country=" + url_encode(config_.country));
    if (res.status != 200) {
      out.errors.push_back({id, describe(res)});
      continue;
    }
    try {
      const Json doc = Json::parse(res.body);
      const auto& results = doc.at("results");
      if (!results.is_array() || results.empty()) {
        out.errors.push_back({id, "not found"});
        continue;
      }
      out.apps.push_back(app_from_lookup(id, results.front()));
    } catch (const std::exception& e) {
      out.errors.push_back({id, std::string("bad payload: ") + e.what()});
    }
  }
  if (out.apps.empty()) {
    std::string msg = "all " + std::to_string(app_ids.size()) + " lookups failed";
    if (!out.errors.empty()) msg += " (first: " + out.errors.front().id + ": " +
                                    out.errors.front().message + ")";
    throw FetchError(msg);
  }
  return out;
}

Review review_from_feed(const std::string& app_id, const Json& entry) {
  if (!entry.is_object()) throw std::invalid_argument("review entry is not an object");
  Review r;
  r.review_id = id_string(entry.at("id"));
  r.app_id = app_id;
  r.author = string_field(entry, "author");
  r.title = string_field(entry, "title");
  r.body = entry.contains("body") ? string_field(entry, "body") : string_field(entry, "content");
  r.rating = entry.at("rating").get<int>();
  const auto d = parse_date(entry.at("date").get<std::string>());
  if (!d) throw std::invalid_argument("bad review date");
  r.date = *d;
  if (const auto it = entry.find("helpful_votes"); it != entry.end() && it->is_number_integer()) {
    r.helpful_votes = it->get<std::int64_t>();
  }
  r.app_version = string_field(entry, "version");
  r.raw = entry;
  validate(r);
  return r;
}

ReviewFetch StoreClient::fetch_reviews(const std::string& app_id, std::optional<Date> since) {
  ReviewFetch out;
  std::set<std::string> seen;
  int page = 1;
  while (page <= config_.max_pages) {
    const auto res = get_with_retry("/reviews?id=" + url_encode(app_id) + "&page=" +
                                    std::to_string(page) +
                                    "&country=" + url_encode(config_.country));
    if (res.status != 200) {
      out.error = "page " + std::to_string(page) + ": " + describe(res);
      return out;
    }
    Json doc;
    try {
      doc = Json::parse(res.body);
    } catch (const std::exception& e) {
      out.error = "page " + std::to_string(page) + ": bad payload: " + e.what();
      return out;
    }
    ++out.pages;
    const auto it = doc.find("reviews");
    if (it == doc.end() || !it->is_array() || it->empty()) return out;

    bool reached_since = false;
    for (const auto& entry : *it) {
      Review r;
      try {
        r = review_from_feed(app_id, entry);
      } catch (const std::exception& e) {
        out.warnings.push_back("page " + std::to_string(page) + ": skipped entry: " + e.what());
        continue;
      }
      if (since && days_between(*since, r.date) <= 0) {
        if (days_between(*since, r.date) < 0) reached_since = true;
        continue;
      }
      if (!seen.insert(r.review_id).second) {
        out.warnings.push_back("duplicate review id " + r.review_id + " dropped");
        continue;
      }
      out.reviews.push_back(std::move(r));
    }
    if (reached_since) return out;

    const auto next = doc.find("next_page");
    if (next == doc.end() || next->is_null()) return out;
    const int next_page = next->is_number_integer() ? next->get<int>() : page + 1;
    if (next_page <= page) return out;
    page = next_page;
  }
  out.warnings.push_back("stopped after max_pages=" + std::to_string(config_.max_pages));
  return out;
}

ReleaseImport import_releases(std::istream& in, std::span<const Release> existing) {
  ReleaseImport out;
  csv::Reader reader(in);
  const auto header = reader.next();
  if (!header) return out;
  std::vector<std::string> got;
  for (const auto& f : header->fields) got.push_back(text::ascii_lower(text::trim(f)));
  if (got != std::vector<std::string>{"app_id", "version", "date", "notes"}) {
    out.rejections.push_back({header->line, "expected header app_id,version,date,notes"});
    return out;
  }

  std::set<std::pair<std::string, std::string>> keys;
  std::map<std::string, Date> latest;
  for (const auto& r : existing) {
    keys.emplace(r.app_id, r.version);
    auto [it, fresh] = latest.emplace(r.app_id, r.date);
    if (!fresh && days_between(it->second, r.date) > 0) it->second = r.date;
  }

  while (auto rec = reader.next()) {
    if (rec->fields.size() != 4) {
      out.rejections.push_back({rec->line, "expected 4 fields, got " +
                                               std::to_string(rec->fields.size())});
      continue;
    }
    Release r;
    r.app_id = std::string(text::trim(rec->fields[0]));
    r.version = std::string(text::trim(rec->fields[1]));
    r.notes = rec->fields[3];
    if (r.app_id.empty() || r.version.empty()) {
      out.rejections.push_back({rec->line, "empty app_id or version"});
      continue;
    }
    const auto date = parse_date(text::trim(rec->fields[2]));
    if (!date || text::trim(rec->fields[2]).size() != 10) {
      out.rejections.push_back({rec->line, "bad date '" + rec->fields[2] + "', expected YYYY-MM-DD"});
      continue;
    }
    r.date = *date;
    if (keys.contains({r.app_id, r.version})) {
      out.rejections.push_back({rec->line, "duplicate release " + r.app_id + " " + r.version});
      continue;
    }
    if (const auto it = latest.find(r.app_id);
        it != latest.end() && days_between(it->second, r.date) < 0) {
      out.rejections.push_back({rec->line, "release date precedes the previous release of " +
                                               r.app_id});
      continue;
    }
    keys.emplace(r.app_id, r.version);
    latest[r.app_id] = r.date;
    out.releases.push_back(std::move(r));
  }
  return out;
}

}  // namespace appemo
