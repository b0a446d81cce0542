#include "mace/csv_io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "mace/errors.hpp"
#include "text_util.hpp"

namespace mace {
namespace {

static_assert(std::endian::native == std::endian::little, "binary series format assumes little-endian hosts");

std::ifstream open_input(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

void ensure_parent(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
  if (!out) throw DataError("write failed for " + path.string());
}

void write_series_csv(const std::filesystem::path& path, const TimeSeries& series) {
  std::string text = "value\n";
  text.reserve(series.size() * 24);
  for (double v : series.values) {
    text += format_double(v);
    text += '\n';
  }
  write_text_file(path, text);
}

TimeSeries read_series_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  std::size_t column = 0;
  bool header = false;
  TimeSeries out;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_csv(line);
    if (!header) {
      header = true;
      auto it = std::find(fields.begin(), fields.end(), "value");
      if (it != fields.end()) {
        column = static_cast<std::size_t>(it - fields.begin());
        continue;
      }
      if (fields.size() != 1) throw DataError(path.string() + ": no 'value' column");
    }
    double v = 0.0;
    if (column >= fields.size() || !detail::parse_double(fields[column], v)) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": unparsable value");
    }
    out.values.push_back(v);
  }
  if (out.empty()) throw DataError(path.string() + " holds no samples");
  return out;
}

void write_series_binary(const std::filesystem::path& path, const TimeSeries& series) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(series.values.data()),
            static_cast<std::streamsize>(series.values.size() * sizeof(double)));
  if (!out) throw DataError("write failed for " + path.string());
}

TimeSeries read_series_binary(const std::filesystem::path& path) {
  const auto bytes = std::filesystem::file_size(path);
  if (bytes == 0 || bytes % sizeof(double) != 0) {
    throw DataError(path.string() + " is not a float64 column (" + std::to_string(bytes) + " bytes)");
  }
  auto in = open_input(path, std::ios::binary);
  TimeSeries out;
  out.values.resize(bytes / sizeof(double));
  in.read(reinterpret_cast<char*>(out.values.data()), static_cast<std::streamsize>(bytes));
  if (!in) throw DataError("read failed for " + path.string());
  return out;
}

TimeSeries read_series(const std::filesystem::path& path) {
  return path.extension() == ".bin" ? read_series_binary(path) : read_series_csv(path);
}

void write_partition_csv(std::ostream& out, const ClusterHistogram& hist) {
  out << "tau,count\n";
  for (const auto& [tau, count] : hist) out << tau << ',' << count << '\n';
}

void write_curves_csv(std::ostream& out, std::span<const EntropyCurve> curves) {
  out << "M,n,tau,S\n";
  for (const auto& c : curves) {
    for (const auto& [tau, s] : c.points) out << c.horizon << ',' << c.n << ',' << tau << ',' << format_double(s) << '\n';
  }
}

std::vector<EntropyCurve> read_curves_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  std::map<std::pair<int, std::size_t>, EntropyCurve> curves;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto f = detail::split_csv(line);
    if (!header) {
      if (f != std::vector<std::string>{"M", "n", "tau", "S"}) throw DataError(path.string() + ": expected header M,n,tau,S");
      header = true;
      continue;
    }
    std::int64_t m = 0;
    std::size_t n = 0, tau = 0;
    double s = 0.0;
    if (f.size() != 4 || !detail::parse_int(f[0], m) || !detail::parse_size(f[1], n) || !detail::parse_size(f[2], tau) ||
        !detail::parse_double(f[3], s)) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": malformed curve row");
    }
    auto& c = curves[{static_cast<int>(m), n}];
    c.horizon = static_cast<int>(m);
    c.n = n;
    c.points[tau] = s;
  }
  if (curves.empty()) throw DataError(path.string() + " holds no curve points");
  std::vector<EntropyCurve> out;
  for (auto& [key, c] : curves) out.push_back(std::move(c));
  return out;
}

void write_mdi_csv(std::ostream& out, const MdiTable& table) {
  out << "M,n,I,I_power,I_linear\n";
  for (const auto& [key, v] : table.values) {
    out << key.first << ',' << key.second << ',' << format_double(v.total) << ',' << format_double(v.power_law) << ','
        << format_double(v.linear) << '\n';
  }
}

nlohmann::json curves_json(std::span<const EntropyCurve> curves) {
  auto arr = nlohmann::json::array();
  for (const auto& c : curves) {
    nlohmann::json j;
    j["M"] = c.horizon;
    j["n"] = c.n;
    std::vector<std::size_t> taus;
    std::vector<double> s;
    for (const auto& [tau, v] : c.points) {
      taus.push_back(tau);
      s.push_back(v);
    }
    j["tau"] = taus;
    j["S"] = s;
    arr.push_back(std::move(j));
  }
  return arr;
}

nlohmann::json mdi_json(const MdiTable& table) {
  auto arr = nlohmann::json::array();
  for (const auto& [key, v] : table.values) {
    arr.push_back({{"M", key.first}, {"n", key.second}, {"I", v.total}, {"I_power", v.power_law}, {"I_linear", v.linear}});
  }
  return arr;
}

void write_horizon_spec_csv(std::ostream& out, const HorizonSpec& spec) {
  out << "M,N,N_M,t_S,t_S_star\n";
  char ratio[32];
  for (std::size_t m = 0; m < spec.horizons(); ++m) {
    std::snprintf(ratio, sizeof ratio, "%.4f", spec.ratio(m));
    out << m + 1 << ',' << spec.boundaries[m] << ',' << spec.n_min << ',' << ratio << ',' << spec.intervals[m] << '\n';
  }
}

void write_ttest_csv(std::ostream& out, const PTable& table) {
  out << "M,set,p\n";
  for (int m : table.horizons) {
    for (const auto& set : table.sets) {
      auto it = table.cells.find({m, set});
      if (it == table.cells.end()) continue;
      out << m << ',' << set << ',' << format_double(it->second.p_value) << '\n';
    }
  }
}

nlohmann::json ttest_json(const PTable& table) {
  auto arr = nlohmann::json::array();
  for (int m : table.horizons) {
    for (const auto& set : table.sets) {
      auto it = table.cells.find({m, set});
      if (it == table.cells.end()) continue;
      const auto& r = it->second;
      arr.push_back({{"M", m},
                     {"set", set},
                     {"t", r.t_stat},
                     {"p", r.p_value},
                     {"log10_p", r.log10_p},
                     {"dof", r.dof},
                     {"pairs", r.pairs},
                     {"reject_at_5pct", r.reject_at_5pct}});
    }
  }
  return arr;
}

}  // namespace mace
