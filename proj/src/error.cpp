#include "sdof/error.hpp"

namespace sdof {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::SumNotOne: return "SumNotOne";
    case Errc::AsymmetricPmf: return "AsymmetricPmf";
    case Errc::NegativeMass: return "NegativeMass";
    case Errc::ZeroChannel: return "ZeroChannel";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::CsitViolation: return "CsitViolation";
    case Errc::NotDecodable: return "NotDecodable";
    case Errc::BadGroup: return "BadGroup";
    case Errc::GridTooSmall: return "GridTooSmall";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::UnsupportedState: return "UnsupportedState";
    case Errc::TargetNotApplicable: return "TargetNotApplicable";
    case Errc::PointOutsideRegion: return "PointOutsideRegion";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

SdofError::SdofError(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw SdofError(code, what); }

}  // namespace sdof
