#include "qha/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace qha {
namespace {

static_assert(std::endian::native == std::endian::little, "signal files assume a little-endian host");

constexpr char kMagic[4] = {'Q', 'H', 'A', '1'};

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in, const char* what) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) throw FormatError(std::string("truncated signal file: ") + what);
  return value;
}

double parse_double(const std::string& field) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin < end && *begin == ' ') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) throw FormatError("malformed number in signal CSV: '" + field + "'");
  return v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

SignalFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? SignalFormat::csv : SignalFormat::binary;
}

void write_signals_binary(std::ostream& out, const DataSet& data) {
  out.write(kMagic, 4);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(data.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(data.size()));
  for (const auto& s : data.signals()) {
    for (int i = 0; i < s.dim(); ++i) {
      put<double>(out, s[i].real());
      put<double>(out, s[i].imag());
    }
  }
  if (!out) throw FormatError("failed to write signal file");
}

DataSet read_signals_binary(std::istream& in) {
  char magic[4] = {};
  if (!in.read(magic, 4)) throw FormatError("empty or truncated signal file");
  if (std::memcmp(magic, kMagic, 4) != 0) throw FormatError("bad magic in signal file");
  const auto d = get<std::uint32_t>(in, "dimension");
  const auto n = get<std::uint32_t>(in, "count");
  if (d == 0 || n == 0) throw FormatError("signal file declares an empty data set");
  std::vector<Signal> signals;
  signals.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    CVector v(d);
    for (std::uint32_t j = 0; j < d; ++j) {
      const double re = get<double>(in, "values");
      const double im = get<double>(in, "values");
      v(j) = Complex(re, im);
    }
    signals.emplace_back(std::move(v));
  }
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after declared signals");
  return DataSet(std::move(signals), 0, "file");
}

void write_signals_csv(std::ostream& out, const DataSet& data) {
  out << "# d=" << data.dim() << " n=" << data.size() << "\n";
  for (const auto& s : data.signals()) {
    for (int i = 0; i < s.dim(); ++i) {
      if (i) out << ',';
      out << format_double(s[i].real()) << ',' << format_double(s[i].imag());
    }
    out << "\n";
  }
  if (!out) throw FormatError("failed to write signal CSV");
}

DataSet read_signals_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw FormatError("empty signal CSV");
  int d = 0;
  int n = 0;
  if (std::sscanf(header.c_str(), "# d=%d n=%d", &d, &n) != 2 || d <= 0 || n <= 0) {
    throw FormatError("malformed signal CSV header: '" + header + "'");
  }
  std::vector<Signal> signals;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> fields;
    std::stringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(parse_double(field));
    if (static_cast<int>(fields.size()) != 2 * d) {
      throw FormatError("signal CSV row has " + std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(2 * d));
    }
    CVector v(d);
    for (int j = 0; j < d; ++j) v(j) = Complex(fields[2 * j], fields[2 * j + 1]);
    signals.emplace_back(std::move(v));
  }
  if (static_cast<int>(signals.size()) != n) {
    throw FormatError("signal CSV declares " + std::to_string(n) + " rows but has " + std::to_string(signals.size()));
  }
  return DataSet(std::move(signals), 0, "file");
}

void write_signals(const std::filesystem::path& path, const DataSet& data) {
  write_signals(path, data, format_for_path(path));
}

void write_signals(const std::filesystem::path& path, const DataSet& data, SignalFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  if (format == SignalFormat::csv) write_signals_csv(out, data);
  else write_signals_binary(out, data);
}

DataSet read_signals(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return format_for_path(path) == SignalFormat::csv ? read_signals_csv(in) : read_signals_binary(in);
}

nlohmann::json to_json(const DomainDescriptor& d) {
  return {{"shape", d.shape}, {"width", d.width},       {"height", d.height}, {"center_t", d.center_t},
          {"center_f", d.center_f}, {"d", d.d}, {"units", d.units}};
}

DomainDescriptor domain_descriptor_from_json(const nlohmann::json& j) {
  DomainDescriptor d;
  d.shape = j.value("shape", d.shape);
  d.width = j.value("width", d.width);
  d.height = j.value("height", d.height);
  d.center_t = j.value("center_t", d.center_t);
  d.center_f = j.value("center_f", d.center_f);
  d.d = j.value("d", d.d);
  d.units = j.value("units", d.units);
  return d;
}

Domain domain_from_descriptor(const DomainDescriptor& descriptor) {
  const PhaseGrid grid(descriptor.d);
  if (descriptor.shape == "full") return full_domain(grid);
  if (descriptor.shape != "rect") throw std::invalid_argument("unknown domain shape '" + descriptor.shape + "'");
  if (descriptor.units != "phase" && descriptor.units != "cells") {
    throw std::invalid_argument("unknown domain units '" + descriptor.units + "'");
  }
  return scaled_domain(descriptor, 1.0);
}

nlohmann::json to_json(const BoundsReport& r) {
  return {{"lower", r.lower},
          {"mid", r.mid},
          {"upper", r.upper},
          {"slack_lower", r.slack_lower},
          {"slack_upper", r.slack_upper},
          {"tolerance", r.tolerance},
          {"entropy_stilde", r.entropy_stilde},
          {"entropy_s", r.entropy_s},
          {"sandwich_pass", r.sandwich_pass},
          {"berlieb2_pass", r.berlieb2_pass},
          {"pass", r.pass}};
}

}  // namespace qha
