#include "newsforge/error.hpp"

namespace newsforge {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::EmptyDocument: return "empty document";
    case ErrorCode::EmptyCorpus: return "empty corpus";
    case ErrorCode::EmptyInput: return "empty input";
    case ErrorCode::TooFewInstances: return "too few instances";
    case ErrorCode::NoEnemies: return "no enemies";
    case ErrorCode::UnknownWord: return "unknown word";
    case ErrorCode::UnknownCountry: return "unknown country";
  }
  return "unknown error";
}

}  // namespace newsforge
