#pragma once

#include <stdexcept>
#include <string>

namespace degdet {

/// Base of every error raised by the library. `name()` is the stable
/// identifier that ends up in CLI reports.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define DEGDET_DEFINE_ERROR(Type)                                  \
  class Type : public Error {                                      \
   public:                                                         \
    explicit Type(const std::string& what) : Error(#Type, what) {} \
  }

DEGDET_DEFINE_ERROR(DimensionMismatch);
DEGDET_DEFINE_ERROR(NonPrime);
DEGDET_DEFINE_ERROR(PositiveDegree);
DEGDET_DEFINE_ERROR(NcRankGap);
DEGDET_DEFINE_ERROR(IterationBoundExceeded);
DEGDET_DEFINE_ERROR(PrecisionUnsupported);
DEGDET_DEFINE_ERROR(RetryExhausted);
DEGDET_DEFINE_ERROR(SizeLimitExceeded);
DEGDET_DEFINE_ERROR(ExtractionFailed);
DEGDET_DEFINE_ERROR(InvalidInstance);
DEGDET_DEFINE_ERROR(FormatError);
DEGDET_DEFINE_ERROR(VersionMismatch);

#undef DEGDET_DEFINE_ERROR

}  // namespace degdet
