#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "appemo/dates.hpp"
#include "appemo/ingest.hpp"
#include "appemo/temporal.hpp"

namespace appemo::cli {

struct RunConfig {
  std::filesystem::path archive;
  std::filesystem::path lexicon_manifest;
  std::filesystem::path emoji_lexicon;
  std::uint64_t emoji_min_occurrences = 100;
  ClientConfig client;
  PatternConfig patterns;
  Date from{std::chrono::year(2016), std::chrono::January, std::chrono::day(4)};
  Date to{std::chrono::year(2016), std::chrono::December, std::chrono::day(18)};
  std::size_t min_reviews = 1000;
};

// Runs one subcommand (args exclude the program name). Returns the process
// exit code; diagnostics go to `err`, reports to `out` unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace appemo::cli
