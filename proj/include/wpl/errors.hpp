#pragma once

#include <stdexcept>
#include <string>

namespace wpl {

// Base of every error raised by the library. `code()` is a stable name
// used in machine-readable CLI output.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define WPL_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

WPL_DEFINE_ERROR(NonTubularWeights)
WPL_DEFINE_ERROR(DuplicateLabel)
WPL_DEFINE_ERROR(InvalidLabel)
WPL_DEFINE_ERROR(RadicalRankError)
WPL_DEFINE_ERROR(NormalizationError)
WPL_DEFINE_ERROR(SlopeUndefined)
WPL_DEFINE_ERROR(SlopeParseError)
WPL_DEFINE_ERROR(LengthNotSupported)
WPL_DEFINE_ERROR(CapTooSmall)
WPL_DEFINE_ERROR(NotInChart)
WPL_DEFINE_ERROR(NotTorsionFree)
WPL_DEFINE_ERROR(NegativeBudget)
WPL_DEFINE_ERROR(InfiniteSlopeRejected)
WPL_DEFINE_ERROR(NotInQq)
WPL_DEFINE_ERROR(NoClass)
WPL_DEFINE_ERROR(UnknownTube)
WPL_DEFINE_ERROR(ArithmeticOverflow)
WPL_DEFINE_ERROR(UnassignedSummand)
WPL_DEFINE_ERROR(NotCoherent)
WPL_DEFINE_ERROR(InvalidObject)
WPL_DEFINE_ERROR(GateFailed)

#undef WPL_DEFINE_ERROR

// Syntax errors carry the byte offset into the parsed text.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t pos)
      : Error("SyntaxError", what + " at position " + std::to_string(pos)),
        pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace wpl
