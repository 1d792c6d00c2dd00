#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace geomwave {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments: dimension mismatch, short periodic length, bad levels.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Data is not dense enough: an exp/log/transport would cross the cut locus.
/// Carries the pyramid level and sequence index once a caller knows them.
class DensityError : public Error {
 public:
  explicit DensityError(const std::string& detail)
      : Error(compose(detail, std::nullopt, std::nullopt)), detail_(detail) {}

  DensityError(const std::string& detail, std::optional<int> level,
               std::optional<std::ptrdiff_t> index)
      : Error(compose(detail, level, index)),
        detail_(detail),
        level_(level),
        index_(index) {}

  const std::string& detail() const noexcept { return detail_; }
  std::optional<int> level() const noexcept { return level_; }
  std::optional<std::ptrdiff_t> index() const noexcept { return index_; }

  DensityError at_index(std::ptrdiff_t index) const { return {detail_, level_, index}; }
  DensityError at_level(int level) const { return {detail_, level, index_}; }

 private:
  static std::string compose(const std::string& detail, std::optional<int> level,
                             std::optional<std::ptrdiff_t> index) {
    std::string msg = "data not dense enough";
    if (level) msg += " at level " + std::to_string(*level);
    if (index) msg += (level ? ", index " : " at index ") + std::to_string(*index);
    return msg + ": " + detail;
  }

  std::string detail_;
  std::optional<int> level_;
  std::optional<std::ptrdiff_t> index_;
};

/// Stored pyramid data disagrees with what the predictor recomputes.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// A ratio whose denominator vanishes.
class UndefinedRatioError : public Error {
 public:
  using Error::Error;
};

/// File contents violate the geomwave/1 schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace geomwave
