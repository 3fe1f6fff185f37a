#pragma once

#include <stdexcept>
#include <string>

namespace ciag {

enum class Errc {
  PriorDegenerate,       // prior == 1 makes the mixed claim probability undefined
  DeterrenceInfeasible,  // no audit frequency <= 1 deters the non-secure type
  RegionMismatch,        // mixed solution requested outside its region (delta > 1)
  WrongRegion,           // operation requires a mixed solution
  InvalidConfig,
  ParseError,
  ValidationError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::PriorDegenerate: return "PriorDegenerate";
    case Errc::DeterrenceInfeasible: return "DeterrenceInfeasible";
    case Errc::RegionMismatch: return "RegionMismatch";
    case Errc::WrongRegion: return "WrongRegion";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  [[nodiscard]] Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace ciag
