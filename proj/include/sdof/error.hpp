#pragma once

#include <stdexcept>
#include <string>

namespace sdof {

enum class Errc {
  SumNotOne,
  AsymmetricPmf,
  NegativeMass,
  ZeroChannel,
  LengthMismatch,
  InvalidParameter,
  CsitViolation,
  NotDecodable,
  BadGroup,
  GridTooSmall,
  OutOfRange,
  UnsupportedState,
  TargetNotApplicable,
  PointOutsideRegion,
  ParseError,
};

const char* errc_name(Errc code);

class SdofError : public std::runtime_error {
 public:
  SdofError(Errc code, const std::string& what);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace sdof
