#pragma once

#include <stdexcept>
#include <string>

namespace newsforge {

enum class ErrorCode {
  InvalidArgument,
  Io,
  Parse,
  EmptyDocument,
  EmptyCorpus,
  EmptyInput,
  TooFewInstances,
  NoEnemies,
  UnknownWord,
  UnknownCountry,
};

const char* to_string(ErrorCode code) noexcept;

/// Library-wide exception. Every failure the library reports carries one of
/// the codes above so the C layer can translate it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace newsforge
