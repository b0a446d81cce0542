#include "mace/ticks.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <optional>

#include "mace/csv_io.hpp"
#include "mace/errors.hpp"
#include "text_util.hpp"

namespace mace {
namespace {

std::chrono::year_month month_of(std::int64_t epoch_ms) {
  using namespace std::chrono;
  const sys_days day = floor<days>(sys_time<milliseconds>(milliseconds(epoch_ms)));
  const year_month_day ymd(day);
  return ymd.year() / ymd.month();
}

}  // namespace

std::vector<std::size_t> TickData::cumulative_month_lengths() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k < month_starts.size(); ++k) out.push_back(month_starts[k] - 1);
  if (!series.empty()) out.push_back(series.size());
  return out;
}

TickData ingest_ticks(const std::filesystem::path& path, const TickColumns& columns, std::size_t every) {
  if (every == 0) throw ParameterError("tick decimation interval must be >= 1");
  std::ifstream in(path);
  if (!in) throw DataError("cannot open tick file " + path.string());

  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> ts_col, px_col;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto header = detail::split_csv(line);
    width = header.size();
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == columns.timestamp) ts_col = c;
      if (header[c] == columns.price) px_col = c;
    }
    break;
  }
  if (width == 0) throw DataError("tick file " + path.string() + " is empty");
  if (!ts_col || !px_col) {
    throw DataError("tick file " + path.string() + " lacks columns '" + columns.timestamp + "' and '" + columns.price + "'");
  }

  TickData out;
  std::size_t tick = 0;
  std::optional<std::int64_t> prev_ts;
  std::optional<std::chrono::year_month> prev_month;
  const auto fail = [&](const std::string& what) {
    throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != width) fail("expected " + std::to_string(width) + " fields");
    std::int64_t ts = 0;
    if (!detail::parse_int(fields[*ts_col], ts)) fail("unparsable timestamp '" + fields[*ts_col] + "'");
    double px = 0.0;
    if (!detail::parse_double(fields[*px_col], px)) fail("unparsable price '" + fields[*px_col] + "'");
    if (!(px > 0.0)) fail("non-positive price");
    if (prev_ts && ts < *prev_ts) fail("timestamp decreases");
    prev_ts = ts;
    if (tick++ % every != 0) continue;
    const auto month = month_of(ts);
    out.series.values.push_back(px);
    out.series.timestamps.push_back(ts);
    if (!prev_month || month != *prev_month) out.month_starts.push_back(out.series.size());
    prev_month = month;
  }
  if (out.series.empty()) throw DataError("tick file " + path.string() + " has no records");
  return out;
}

void write_ticks(const std::filesystem::path& path, const TimeSeries& series) {
  if (!series.has_timestamps()) throw ParameterError("write_ticks requires timestamps");
  std::string text = "timestamp,price\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    text += std::to_string(series.timestamps[i]);
    text += ',';
    text += format_double(series.values[i]);
    text += '\n';
  }
  write_text_file(path, text);
}

}  // namespace mace
