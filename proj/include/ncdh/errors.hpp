#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncdh {

/// Base of every domain error. name() is the stable identifier printed by the
/// CLI on the diagnostic stream (exit code 2).
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define NCDH_DEFINE_ERROR(Type)                                   \
  class Type : public Error {                                     \
   public:                                                        \
    explicit Type(const std::string& what) : Error(#Type, what) {} \
  };

NCDH_DEFINE_ERROR(NotInvertible)
NCDH_DEFINE_ERROR(ModulusMismatch)
NCDH_DEFINE_ERROR(InvalidModulus)
NCDH_DEFINE_ERROR(CharacteristicExcluded)
NCDH_DEFINE_ERROR(ThresholdUnreachable)
NCDH_DEFINE_ERROR(NoNoncommutingTorus)
NCDH_DEFINE_ERROR(InvalidParameters)
NCDH_DEFINE_ERROR(Exhausted)
NCDH_DEFINE_ERROR(ResourceCap)
NCDH_DEFINE_ERROR(Uninformative)
NCDH_DEFINE_ERROR(ScalarX)
NCDH_DEFINE_ERROR(RepeatedEigenvalue)
NCDH_DEFINE_ERROR(NoTorusSolution)
NCDH_DEFINE_ERROR(FormatError)

#undef NCDH_DEFINE_ERROR

/// A quasideterminant needed the inverse of minor A^{ij} and it does not exist.
class MinorNotInvertible : public Error {
 public:
  MinorNotInvertible(std::size_t row, std::size_t col)
      : Error("MinorNotInvertible",
              "minor (" + std::to_string(row + 1) + "," + std::to_string(col + 1) +
                  ") is not invertible"),
        row_(row),
        col_(col) {}
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

}  // namespace ncdh
