#include "borrowoc/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "borrowoc/statmath.hpp"

namespace borrowoc::cli {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

void append_row(std::string& out, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& cell : cells) {
    if (!first) out += ',';
    out += cell;
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
  if (text == "inf") return kInf;
  if (text == "-inf") return -kInf;
  if (text == "nan") return std::nan("");
  double x = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return x;
}

std::string provenance_line(const ScenarioConfig& config, std::string_view subcommand,
                            std::size_t nsim) {
  std::ostringstream os;
  os << "# tool=borrowoc " << BORROWOC_VERSION << " config_hash=" << config_hash(config)
     << " seed=" << config.seed << " nsim=" << nsim
     << " scenario=" << design_name(config.design) << " method=" << config.method
     << " command=" << subcommand;
  return os.str();
}

nlohmann::ordered_json provenance_json(const ScenarioConfig& config,
                                       std::string_view subcommand, std::size_t nsim) {
  nlohmann::ordered_json p;
  p["tool"] = std::string("borrowoc ") + BORROWOC_VERSION;
  p["config_hash"] = config_hash(config);
  p["seed"] = config.seed;
  p["nsim"] = nsim;
  p["scenario"] = design_name(config.design);
  p["method"] = config.method;
  p["command"] = std::string(subcommand);
  return p;
}

std::string records_csv(const std::vector<ReplicateRecord>& records,
                        const std::string& provenance) {
  std::string out = provenance + "\n";
  out += kRecordsHeader;
  out += '\n';
  for (const auto& r : records) {
    append_row(out, {std::to_string(r.replicate), format_number(r.dE_mean),
                     format_number(r.t1e_borrow), format_number(r.power_borrow),
                     format_number(r.power_calibrated), format_number(r.power_diff)});
  }
  return out;
}

std::vector<ReplicateRecord> read_records_csv(std::string_view text) {
  std::vector<ReplicateRecord> records;
  bool header_seen = false;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kRecordsHeader) {
        throw std::invalid_argument("records CSV: unexpected header '" + std::string(line) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != 6) {
      throw std::invalid_argument("records CSV line " + std::to_string(line_no) +
                                  ": expected 6 fields");
    }
    ReplicateRecord r;
    const auto rep = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(),
                                     r.replicate);
    if (rep.ec != std::errc() || rep.ptr != cells[0].data() + cells[0].size()) {
      throw std::invalid_argument("records CSV line " + std::to_string(line_no) +
                                  ": bad replicate index");
    }
    r.dE_mean = parse_number(cells[1]);
    r.t1e_borrow = parse_number(cells[2]);
    r.power_borrow = parse_number(cells[3]);
    r.power_calibrated = parse_number(cells[4]);
    r.power_diff = parse_number(cells[5]);
    records.push_back(r);
  }
  if (!header_seen) throw std::invalid_argument("records CSV: missing header");
  return records;
}

std::vector<ReplicateRecord> read_records_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return read_records_csv(std::string_view(text.str()));
}

std::string format_fixed17(double x) {
  if (!std::isfinite(x)) return format_number(x);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string profile_csv(const OCProfile& profile, const std::string& provenance) {
  std::string out = provenance + "\n";
  out += "offset,t1e,power_borrow,power_calibrated,power_diff\n";
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    const bool power = i < profile.power_borrow.size();
    append_row(out, {format_fixed17(profile.grid[i]), format_fixed17(profile.t1e[i]),
                     power ? format_fixed17(profile.power_borrow[i]) : "",
                     format_fixed17(profile.power_calibrated),
                     power ? format_fixed17(profile.power_diff[i]) : ""});
  }
  return out;
}

std::string region_csv(const std::vector<RegionRow>& rows, const std::string& provenance) {
  std::string out = provenance + "\n";
  out += "dE_mean,interval_index,lo,hi\n";
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.region.intervals.size(); ++k) {
      const Interval& iv = row.region.intervals[k];
      append_row(out, {format_number(row.dE_mean), std::to_string(k), format_number(iv.lo()),
                       format_number(iv.hi())});
    }
  }
  return out;
}

nlohmann::ordered_json stats_json(const SummaryStats& s) {
  return {{"mean", s.mean}, {"min", s.min}, {"max", s.max}, {"median", s.median}};
}

void write_outputs(const std::filesystem::path& dir, const OutputFiles& files) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  std::vector<fs::path> temps;
  auto cleanup = [&] {
    for (const auto& t : temps) fs::remove(t, ec);
  };
  for (const auto& [name, content] : files) {
    const fs::path tmp = dir / ("." + name + ".tmp");
    temps.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) {
      cleanup();
      throw IoError("cannot write " + tmp.string());
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    fs::rename(temps[i], dir / files[i].first, ec);
    if (ec) {
      cleanup();
      throw IoError("cannot move " + temps[i].string() + " into place: " + ec.message());
    }
  }
}

}  // namespace borrowoc::cli
