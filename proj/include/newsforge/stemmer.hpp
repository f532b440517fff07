#pragma once

#include <string>
#include <string_view>

namespace newsforge {

/// Porter suffix-stripping stemmer, reference-implementation variant
/// (the `bli`/`logi` step-2 rules, words of length <= 2 left untouched).
/// Input is expected to be lowercase ASCII; other bytes are treated as
/// consonants.
std::string porter_stem(std::string_view word);

}  // namespace newsforge
