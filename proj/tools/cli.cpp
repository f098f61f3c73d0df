#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "appemo/analytics.hpp"
#include "appemo/archive.hpp"
#include "appemo/emoji.hpp"
#include "appemo/lexicon.hpp"
#include "appemo/reports.hpp"

namespace appemo::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Date require_date(const std::string& s, const char* flag) {
  const auto d = parse_date(s);
  if (!d || s.size() != 10) {
    throw UsageError(std::string(flag) + ": expected YYYY-MM-DD, got '" + s + "'");
  }
  return *d;
}

void require_file(const std::filesystem::path& p, const char* what) {
  if (p.empty()) throw UsageError(std::string(what) + " is required");
  std::ifstream probe(p);
  if (!probe) throw UsageError(std::string("cannot read ") + what + " " + p.string());
}

Archive load_or_fail(const std::filesystem::path& path, std::ostream& err) {
  require_file(path, "archive");
  auto loaded = load_archive(path);
  for (const auto& p : loaded.problems) err << "warning: " << path.string() << ": " << p << '\n';
  if (loaded.skipped) err << "warning: skipped " << loaded.skipped << " corrupt line(s)\n";
  return std::move(loaded.archive);
}

struct Lexicons {
  Lexicon lexicon;
  std::optional<EmojiLexicon> emoji;
};

Lexicons load_lexicons(const RunConfig& cfg, std::ostream& err) {
  Lexicons out;
  auto lex = load_lexicon_manifest(cfg.lexicon_manifest);
  for (const auto& w : lex.warnings) err << "warning: " << w << '\n';
  out.lexicon = std::move(lex.lexicon);
  if (!cfg.emoji_lexicon.empty()) {
    std::ifstream in(cfg.emoji_lexicon);
    const auto full = load_emoji_lexicon(in);
    out.emoji = select_frequent(full, cfg.emoji_min_occurrences);
    err << "emoji lexicon: " << full.size() << " entries, " << out.emoji->size()
        << " with more than " << cfg.emoji_min_occurrences << " occurrences\n";
  }
  return out;
}

// Output sink: --out file when given, stdout otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void add_pattern_options(CLI::App* cmd, PatternConfig& p) {
  cmd->add_option("--jump-threshold", p.jump_threshold, "Window difference for jump/drop");
  cmd->add_option("--window", p.window, "Weeks per comparison window");
  cmd->add_option("--slope-threshold", p.slope_threshold, "Trend slope per week");
  cmd->add_option("--fit-threshold", p.fit_threshold, "Minimum R^2 for a steady trend");
  cmd->add_option("--low-variance", p.low_variance, "SD ceiling for consistent emotion");
  cmd->add_option("--min-weekly-reviews", p.min_weekly_reviews,
                  "Reviews needed for a week to count");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sentiment analysis of app store reviews", "appemo"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string from = "2016-01-04", to = "2016-12-18";
  std::string out_path;
  std::vector<std::string> ids;
  std::string import_path, releases_path, since;
  std::string target = "rating";
  bool exclude_neutral = false;
  std::string labeled_path, app_id, version;
  int release_week = 0, impact_window = 3;
  std::optional<std::string> base_url;
  std::optional<double> rate_limit;

  const auto archive_opt = [&](CLI::App* c) {
    c->add_option("--archive", cfg.archive, "Review archive (JSON lines)")->required();
  };
  const auto lexicon_opts = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--lexicon", cfg.lexicon_manifest, "Lexicon manifest");
    if (required) o->required();
    c->add_option("--emoji-lexicon", cfg.emoji_lexicon, "Emoji lexicon CSV");
    c->add_option("--min-occurrences", cfg.emoji_min_occurrences,
                  "Keep emojis seen more often than this");
  };
  const auto window_opts = [&](CLI::App* c) {
    c->add_option("--from", from, "Window start (YYYY-MM-DD)");
    c->add_option("--to", to, "Window end (YYYY-MM-DD)");
  };
  const auto out_opt = [&](CLI::App* c) {
    c->add_option("--out", out_path, "Write the report here instead of stdout");
  };

  auto* ingest = app.add_subcommand("ingest", "Fetch apps and reviews, import archives/releases");
  archive_opt(ingest);
  ingest->add_option("--ids", ids, "App ids to fetch")->delimiter(',');
  ingest->add_option("--import", import_path, "Merge another archive file");
  ingest->add_option("--releases", releases_path, "Release CSV app_id,version,date,notes");
  ingest->add_option("--since", since, "Only keep reviews after this date");
  ingest->add_option("--base-url", base_url, "Store API base URL");
  ingest->add_option("--rate-limit", rate_limit, "Requests per second");

  auto* score = app.add_subcommand("score", "Score every review and combine the strengths");
  archive_opt(score);
  lexicon_opts(score, true);

  auto* summarize = app.add_subcommand("summarize", "Per-category sentiment summary");
  archive_opt(summarize);
  out_opt(summarize);

  auto* correlate = app.add_subcommand("correlate", "Correlate sentiment with rating or price");
  archive_opt(correlate);
  correlate->add_option("--target", target, "rating or price")
      ->check(CLI::IsMember({"rating", "price"}));
  correlate->add_flag("--exclude-neutral", exclude_neutral, "Drop neutral (0) reviews");
  out_opt(correlate);

  auto* ratings = app.add_subcommand("ratings", "Sentiment box plot data per star rating");
  archive_opt(ratings);
  out_opt(ratings);

  auto* topics = app.add_subcommand("topics", "Sentiment dispersion per labeled topic");
  topics->add_option("--labeled", labeled_path, "CSV id,topic,title,body")->required();
  lexicon_opts(topics, true);
  out_opt(topics);

  auto* timeline = app.add_subcommand("timeline", "Weekly sentiment series for one app");
  archive_opt(timeline);
  timeline->add_option("--app", app_id, "App id")->required();
  window_opts(timeline);
  out_opt(timeline);

  auto* patterns = app.add_subcommand("patterns", "Classify weekly series into emotion patterns");
  archive_opt(patterns);
  window_opts(patterns);
  patterns->add_option("--min-reviews", cfg.min_reviews,
                       "Apps need more reviews than this in the window");
  add_pattern_options(patterns, cfg.patterns);
  out_opt(patterns);

  auto* impact = app.add_subcommand("impact", "Compare weeks before and after a release");
  archive_opt(impact);
  impact->add_option("--app", app_id, "App id")->required();
  window_opts(impact);
  auto* week_opt = impact->add_option("--release-week", release_week, "1-based week");
  impact->add_option("--version", version, "Release version to locate")->excludes(week_opt);
  impact->add_option("--weeks", impact_window, "Weeks on each side");
  out_opt(impact);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    // Configuration is validated before any archive is read.
    cfg.client = ClientConfig::from_env(cfg.client);
    if (base_url) cfg.client.base_url = *base_url;
    if (rate_limit) cfg.client.rate_limit = *rate_limit;
    cfg.from = require_date(from, "--from");
    cfg.to = require_date(to, "--to");
    if (days_between(cfg.from, cfg.to) < 0) throw UsageError("--from is after --to");
    cfg.patterns.validate();

    if (*ingest) {
      if (ids.empty() && import_path.empty() && releases_path.empty()) {
        throw UsageError("ingest needs --ids, --import or --releases");
      }
      std::optional<Date> since_date;
      if (!since.empty()) since_date = require_date(since, "--since");
      if (!ids.empty()) cfg.client.validate();
      if (!import_path.empty()) require_file(import_path, "import archive");
      if (!releases_path.empty()) require_file(releases_path, "release CSV");

      ArchiveLock lock(cfg.archive);
      Archive archive;
      if (std::filesystem::exists(cfg.archive)) archive = load_or_fail(cfg.archive, err);

      if (!import_path.empty()) {
        const auto other = load_or_fail(import_path, err);
        merge_archive(archive, other);
        err << "imported " << other.reviews.size() << " review(s) from " << import_path << '\n';
      }
      if (!ids.empty()) {
        StoreClient client(cfg.client);
        auto apps = client.fetch_app_details(ids);
        for (const auto& e : apps.errors) err << "warning: app " << e.id << ": " << e.message << '\n';
        std::size_t added = 0;
        for (const auto& a : apps.apps) {
          std::optional<Date> cutoff = since_date;
          if (!cutoff) {
            for (const auto& r : archive.reviews) {
              if (r.app_id == a.app_id && (!cutoff || days_between(*cutoff, r.date) > 0)) {
                cutoff = r.date;
              }
            }
          }
          auto fetched = client.fetch_reviews(a.app_id, cutoff);
          for (const auto& w : fetched.warnings) err << "warning: app " << a.app_id << ": " << w << '\n';
          if (fetched.error) err << "warning: app " << a.app_id << ": " << *fetched.error << '\n';
          added += merge_reviews(archive, std::move(fetched.reviews));
        }
        merge_apps(archive, std::move(apps.apps));
        err << "fetched " << ids.size() - apps.errors.size() << " app(s), " << added
            << " new review(s)\n";
      }
      if (!releases_path.empty()) {
        std::ifstream in(releases_path);
        auto imported = import_releases(in, archive.releases);
        for (const auto& r : imported.rejections) {
          err << "rejected " << releases_path << ":" << r.line << ": " << r.message << '\n';
        }
        const auto n = merge_releases(archive, std::move(imported.releases));
        err << "imported " << n << " release(s)\n";
      }
      persist_archive(archive, cfg.archive);
      return 0;
    }

    if (*score) {
      require_file(cfg.lexicon_manifest, "lexicon manifest");
      if (!cfg.emoji_lexicon.empty()) require_file(cfg.emoji_lexicon, "emoji lexicon");
      const auto lex = load_lexicons(cfg, err);
      ArchiveLock lock(cfg.archive);
      Archive archive = load_or_fail(cfg.archive, err);
      archive.scored.clear();
      archive.scored.reserve(archive.reviews.size());
      std::size_t undefined = 0;
      for (const auto& r : archive.reviews) {
        archive.scored.push_back(
            score_and_combine(lex.lexicon, r, lex.emoji ? &*lex.emoji : nullptr));
        if (!archive.scored.back().combined.defined()) ++undefined;
      }
      persist_archive(archive, cfg.archive);
      err << "scored " << archive.scored.size() << " review(s), " << undefined
          << " undefined\n";
      return 0;
    }

    if (*topics) {
      require_file(labeled_path, "labeled dataset");
      require_file(cfg.lexicon_manifest, "lexicon manifest");
      if (!cfg.emoji_lexicon.empty()) require_file(cfg.emoji_lexicon, "emoji lexicon");
      Sink sink(out_path, out);
      const auto lex = load_lexicons(cfg, err);
      std::ifstream in(labeled_path);
      const auto labeled = load_labeled_topics(in);
      for (const auto& r : labeled.rejections) {
        err << "rejected " << labeled_path << ":" << r.line << ": " << r.message << '\n';
      }
      std::vector<std::pair<Topic, CombinedSentiment>> pairs;
      for (const auto& row : labeled.rows) {
        Review r;
        r.title = row.title;
        r.body = row.body;
        pairs.emplace_back(row.topic,
                           combine(score_review(lex.lexicon, r, lex.emoji ? &*lex.emoji : nullptr)));
      }
      reports::write_dispersion(sink.stream(), dispersion_by_topic(pairs));
      return 0;
    }

    const Archive archive = load_or_fail(cfg.archive, err);
    Sink sink(out_path, out);

    if (*summarize) {
      reports::write_category_summary(sink.stream(), summarize_by_category(archive),
                                      summarize_overall(archive));
    } else if (*correlate) {
      const CorrelationOptions opts{!exclude_neutral};
      const auto c = target == "price" ? sentiment_vs_price(archive, opts)
                                       : sentiment_vs_rating(archive, opts);
      reports::write_correlation(sink.stream(), target, c);
    } else if (*ratings) {
      reports::write_rating_boxes(sink.stream(), sentiment_by_rating(archive));
    } else if (*timeline) {
      reports::write_timeline(sink.stream(), weekly_aggregate(archive, app_id, cfg.from, cfg.to));
    } else if (*patterns) {
      std::vector<std::pair<std::string, std::set<PatternLabel>>> rows;
      require_scored(archive);
      for (const auto& id : qualifying_apps(archive, cfg.from, cfg.to, cfg.min_reviews)) {
        const auto series = weekly_aggregate(archive, id, cfg.from, cfg.to);
        try {
          rows.emplace_back(id, classify_patterns(series, cfg.patterns));
        } catch (const InsufficientData& e) {
          err << "skipped app " << id << ": " << e.what() << '\n';
        }
      }
      reports::write_patterns(sink.stream(), rows);
    } else if (*impact) {
      const auto series = weekly_aggregate(archive, app_id, cfg.from, cfg.to);
      int week = release_week - 1;
      if (!version.empty()) {
        const auto it = std::find_if(series.releases.begin(), series.releases.end(),
                                     [&](const ReleaseMark& m) { return m.version == version; });
        if (it == series.releases.end()) {
          throw UsageError("release " + version + " is not inside the window");
        }
        week = it->week_index;
      } else if (release_week < 1) {
        throw UsageError("impact needs --release-week or --version");
      }
      reports::write_release_impact(sink.stream(), release_impact(series, week, impact_window));
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace appemo::cli
