#pragma once

// Serialization of tensors (debug dumps) and sample reports.

#include <string>

#include <json.hpp>

#include "mpoq/sampler.hpp"

namespace mpoq {

/// {"ranks": [...], "dims": [...], "cores": [[[[re, im], ...]]]}; each core is
/// nested as [left][phys][right] (MPO phys index lumped as x + d*y).
nlohmann::json tensor_json(const MPS& t);
nlohmann::json tensor_json(const MPO& g);

/// Header bitstring,count,frequency plus probability when exact values exist.
/// Rows are sorted by bitstring.
std::string report_to_csv(const SampleReport& r);

/// Elapsed time is left out so files are byte-stable for a fixed seed.
nlohmann::json report_json(const SampleReport& r);

/// 12 significant digits.
std::string format_number(double v);

}  // namespace mpoq
