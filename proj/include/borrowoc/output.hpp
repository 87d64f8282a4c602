#pragma once

// CSV and JSON serialization of run results, and all-or-nothing file output.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "borrowoc/config.hpp"
#include "borrowoc/region.hpp"
#include "borrowoc/runner.hpp"

namespace borrowoc::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal that reads back to the same double; "inf", "-inf", "nan".
std::string format_number(double x);
/// Inverse of format_number. Throws std::invalid_argument on junk.
double parse_number(std::string_view text);

/// "# tool=borrowoc <version> config_hash=<hex> seed=<u64> nsim=<n>
/// scenario=<design> method=<name> command=<subcommand>"
std::string provenance_line(const ScenarioConfig& config, std::string_view subcommand,
                            std::size_t nsim);

nlohmann::ordered_json provenance_json(const ScenarioConfig& config,
                                       std::string_view subcommand, std::size_t nsim);

inline constexpr std::string_view kRecordsHeader =
    "replicate,dE_mean,t1e_borrow,power_borrow,power_calibrated,power_diff";

std::string records_csv(const std::vector<ReplicateRecord>& records,
                        const std::string& provenance);

/// Records from records_csv output. Comment lines are skipped; the header
/// must match kRecordsHeader.
std::vector<ReplicateRecord> read_records_csv(std::string_view text);
std::vector<ReplicateRecord> read_records_file(const std::filesystem::path& path);

/// "%.17g", which also reads back exactly.
std::string format_fixed17(double x);

/// Columns offset, t1e, power_borrow, power_calibrated, power_diff. Power
/// cells are empty for t1e-only profiles.
std::string profile_csv(const OCProfile& profile, const std::string& provenance);

struct RegionRow {
  double dE_mean;
  RejectionRegion region;
};

/// Columns dE_mean, interval_index, lo, hi. An empty region contributes no rows.
std::string region_csv(const std::vector<RegionRow>& rows, const std::string& provenance);

nlohmann::ordered_json stats_json(const SummaryStats& s);

/// Named file contents, written together.
using OutputFiles = std::vector<std::pair<std::string, std::string>>;

/// Writes every file to a temporary sibling, then renames them into place.
/// Creates `dir` if needed. On failure the temporaries are removed and no
/// target is replaced by a partial file. Throws IoError.
void write_outputs(const std::filesystem::path& dir, const OutputFiles& files);

}  // namespace borrowoc::cli
