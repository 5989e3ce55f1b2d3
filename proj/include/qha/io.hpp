#pragma once

// Signal files and JSON forms of domain descriptors and reports.
//
// Binary layout (little-endian): "QHA1", u32 d, u32 N, then N * d pairs of
// f64 (re, im). CSV layout: a header line "# d=<d> n=<N>" followed by one row
// per signal with 2d columns re0,im0,re1,im1,...

#include "qha/augmentation.hpp"
#include "qha/metrics.hpp"
#include "qha/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

namespace qha {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SignalFormat { binary, csv };

/// Guess from the extension: ".csv" is CSV, anything else binary.
SignalFormat format_for_path(const std::filesystem::path& path);

void write_signals_binary(std::ostream& out, const DataSet& data);
DataSet read_signals_binary(std::istream& in);
void write_signals_csv(std::ostream& out, const DataSet& data);
DataSet read_signals_csv(std::istream& in);

void write_signals(const std::filesystem::path& path, const DataSet& data);
void write_signals(const std::filesystem::path& path, const DataSet& data, SignalFormat format);
DataSet read_signals(const std::filesystem::path& path);

nlohmann::json to_json(const DomainDescriptor& descriptor);
DomainDescriptor domain_descriptor_from_json(const nlohmann::json& j);
/// Builds the domain a descriptor names: "rect" in phase or cell units, or "full".
Domain domain_from_descriptor(const DomainDescriptor& descriptor);

nlohmann::json to_json(const BoundsReport& report);

}  // namespace qha
