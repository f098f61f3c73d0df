#include <doctest.h>

#include <fstream>
#include <sstream>

#include "../tools/cli.hpp"
#include "support.hpp"

using namespace appemo;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string lexicon() { return (testing::data_dir() / "lexicon" / "manifest.tsv").string(); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::vector<std::string>> rows_of(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

Archive worked_example_archive() {
  Archive ar;
  AppRecord app;
  app.app_id = "1";
  app.name = "Wifi App";
  app.primary_category = "Utilities";
  ar.apps.push_back(app);
  Review r;
  r.review_id = "w1";
  r.app_id = "1";
  r.title = "I hate that u need wifi";
  r.body = "but it is great.";
  r.rating = 3;
  r.date = *parse_date("2016-05-02");
  ar.reviews.push_back(r);
  return ar;
}

}  // namespace

TEST_CASE("worked example flows to -4 in the summary") {
  testing::TempDir dir;
  const auto archive = (dir / "a.jsonl").string();
  persist_archive(worked_example_archive(), archive);

  const auto before = run({"summarize", "--archive", archive});
  CHECK(before.code != 0);
  CHECK(before.err.find("run score first") != std::string::npos);

  REQUIRE(run({"score", "--archive", archive, "--lexicon", lexicon()}).code == 0);
  const auto summary = run({"summarize", "--archive", archive});
  REQUIRE(summary.code == 0);
  const auto rows = rows_of(summary.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][0] == "Utilities");
  CHECK(rows[1][5] == "-4.000000");
  CHECK(rows[1][10] == "1.000000");  // share_negative
  CHECK(rows[2][0] == "all");
}

TEST_CASE("score then summarize on a random archive: shares sum to one, reruns match") {
  testing::TempDir dir;
  const auto archive = (dir / "a.jsonl").string();
  std::mt19937_64 rng(12);
  testing::RandomArchiveOptions opts;
  opts.apps = 4;
  opts.reviews = 150;
  opts.scored = false;
  persist_archive(testing::random_archive(rng, opts), archive);
  REQUIRE(run({"score", "--archive", archive, "--lexicon", lexicon()}).code == 0);
  const auto scored_once = slurp(archive);
  REQUIRE(run({"score", "--archive", archive, "--lexicon", lexicon()}).code == 0);
  CHECK(slurp(archive) == scored_once);

  const auto a = run({"summarize", "--archive", archive});
  const auto b = run({"summarize", "--archive", archive});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto rows = rows_of(a.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double total = 0;
    for (int k = 8; k < 12; ++k) total += std::stod(rows[i][k]);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-5));
  }

  const auto out_file = (dir / "summary.csv").string();
  REQUIRE(run({"summarize", "--archive", archive, "--out", out_file}).code == 0);
  CHECK(slurp(out_file) == a.out);
}

TEST_CASE("correlate on monotone data") {
  testing::TempDir dir;
  const auto archive = (dir / "a.jsonl").string();
  Archive ar = worked_example_archive();
  const std::vector<std::pair<int, std::string>> texts{
      {1, "I hate it"}, {2, "sad"}, {3, "meh"}, {4, "good"}, {5, "I love it"}};
  ar.reviews.clear();
  for (const auto& [stars, body] : texts) {
    Review r = worked_example_archive().reviews[0];
    r.review_id = "r" + std::to_string(stars);
    r.title = "";
    r.body = body;
    r.rating = stars;
    ar.reviews.push_back(r);
  }
  persist_archive(ar, archive);
  REQUIRE(run({"score", "--archive", archive, "--lexicon", lexicon()}).code == 0);
  const auto c = run({"correlate", "--archive", archive, "--target", "rating"});
  REQUIRE(c.code == 0);
  const auto rows = rows_of(c.out);
  CHECK(rows[1][0] == "rating");
  CHECK(rows[1][1] == "5");
  CHECK(rows[1][3] == "1.000000");

  const auto price = run({"correlate", "--archive", archive, "--target", "price"});
  CHECK(price.code != 0);
  CHECK(run({"correlate", "--archive", archive, "--target", "stars"}).code != 0);
}

TEST_CASE("timeline, impact and patterns commands") {
  testing::TempDir dir;
  const auto archive = (dir / "a.jsonl").string();
  Archive ar = worked_example_archive();
  ar.releases.push_back({"1", "2.0", *parse_date("2016-05-03"), ""});
  persist_archive(ar, archive);
  REQUIRE(run({"score", "--archive", archive, "--lexicon", lexicon()}).code == 0);

  const auto t = run({"timeline", "--archive", archive, "--app", "1"});
  REQUIRE(t.code == 0);
  const auto rows = rows_of(t.out);
  REQUIRE(rows.size() == 51);
  CHECK(rows[18][0] == "18");
  CHECK(rows[18][1] == "-4.000000");
  CHECK(rows[18][4] == "2.0");

  const auto imp = run({"impact", "--archive", archive, "--app", "1", "--version", "2.0"});
  REQUIRE(imp.code == 0);
  CHECK(imp.out.find("mean_sentiment,,-4.000000") != std::string::npos);
  CHECK(run({"impact", "--archive", archive, "--app", "1"}).code != 0);

  const auto p = run({"patterns", "--archive", archive, "--min-reviews", "0"});
  REQUIRE(p.code == 0);
  CHECK(p.out == "app_id,labels\n");
  CHECK(p.err.find("skipped app 1") != std::string::npos);
}

TEST_CASE("configuration is validated before the archive is read") {
  const auto missing = run({"summarize", "--archive", "/nonexistent/a.jsonl"});
  CHECK(missing.code != 0);
  CHECK(missing.err.find("/nonexistent/a.jsonl") != std::string::npos);

  const auto bad_date =
      run({"summarize", "--archive", "/nonexistent/a.jsonl", "--from", "2016-02-30"});
  CHECK(bad_date.code != 0);
  CHECK(bad_date.err.find("--from") != std::string::npos);

  const auto bad_pattern =
      run({"patterns", "--archive", "/nonexistent/a.jsonl", "--fit-threshold", "2"});
  CHECK(bad_pattern.code != 0);
  CHECK(bad_pattern.err.find("fit threshold") != std::string::npos);

  CHECK(run({}).code != 0);
  CHECK(run({"bogus"}).code != 0);
  CHECK(run({"score", "--archive", "/nonexistent/a.jsonl"}).code != 0);
}

TEST_CASE("ingest from a stub store, with releases") {
  testing::StubStore store;
  store.add_app("7", testing::app_details_payload("Seven", "Games", 0));
  std::vector<Json> entries;
  for (int i = 0; i < 60; ++i) {
    entries.push_back(testing::review_entry("x" + std::to_string(i),
                                            add_days(*parse_date("2016-06-30"), -i), 5,
                                            "great", "love it"));
  }
  store.set_reviews("7", entries, 25);
  testing::TempDir dir;
  const auto archive = (dir / "a.jsonl").string();
  const auto releases = dir / "releases.csv";
  std::ofstream(releases) << "app_id,version,date,notes\n7,1.0,2016-05-01,first\n"
                             "7,1.1,2016-04-01,older\n";

  const auto r = run({"ingest", "--archive", archive, "--ids", "7,8", "--base-url",
                      store.base_url(), "--rate-limit", "0", "--releases",
                      releases.string()});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("warning: app 8") != std::string::npos);
  CHECK(r.err.find("releases.csv:3") != std::string::npos);
  const auto loaded = load_archive(archive).archive;
  CHECK(loaded.apps.size() == 1);
  CHECK(loaded.reviews.size() == 60);
  CHECK(loaded.releases.size() == 1);

  // A second run only asks for reviews newer than the stored ones.
  const int before = store.requests();
  REQUIRE(run({"ingest", "--archive", archive, "--ids", "7", "--base-url", store.base_url(),
               "--rate-limit", "0"})
              .code == 0);
  CHECK(store.requests() - before == 2);
  CHECK(load_archive(archive).archive.reviews.size() == 60);

  CHECK(run({"ingest", "--archive", archive}).code != 0);
  CHECK(run({"ingest", "--archive", archive, "--ids", "7", "--base-url", "nope"}).code != 0);
}
