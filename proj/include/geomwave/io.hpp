#pragma once

// geomwave/1 file formats: samples and pyramids as JSON, decay reports as CSV,
// verification reports as JSON.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "geomwave/experiments.hpp"
#include "geomwave/manifold_transform.hpp"

namespace geomwave {

struct VerifyReport;

inline constexpr const char* kSchema = "geomwave/1";

/// Points on a sphere must have unit norm to this tolerance, and vectors
/// must satisfy |<p, v>| <= kInvariantTol (1 + |v|).
inline constexpr double kInvariantTol = 1e-9;

nlohmann::json samples_to_json(const ManifoldHermiteSeq& samples);
/// Throws SchemaError with a path such as "data[3].p" on malformed input or
/// manifold invariant violations.
ManifoldHermiteSeq samples_from_json(const nlohmann::json& doc);

nlohmann::json pyramid_to_json(const ManifoldPyramid& pyramid);
ManifoldPyramid pyramid_from_json(const nlohmann::json& doc);

nlohmann::json verify_report_to_json(const VerifyReport& report);

/// Throws SchemaError when the file is missing or not valid JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

void write_samples(const std::filesystem::path& path, const ManifoldHermiteSeq& samples);
ManifoldHermiteSeq read_samples(const std::filesystem::path& path);
void write_pyramid(const std::filesystem::path& path, const ManifoldPyramid& pyramid);
ManifoldPyramid read_pyramid(const std::filesystem::path& path);

/// level,sup_norm,log2_ratio rows followed by fitted_slope, fit_range and
/// constant_c footer rows.
std::string decay_csv(const DecayReport& report);
void write_decay_csv(const std::filesystem::path& path, const DecayReport& report);
void write_verify_report(const std::filesystem::path& path, const VerifyReport& report);

/// "3:8" -> {3, 8}. Throws InvalidArgument.
std::pair<int, int> parse_level_range(const std::string& text);

}  // namespace geomwave
