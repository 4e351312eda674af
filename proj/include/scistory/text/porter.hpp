#pragma once

#include <string>
#include <string_view>

namespace scistory::text {

/// Porter (1980) suffix-stripping stemmer, original rule set.
///
/// The input is lowercased (ASCII) before stemming; words of two characters
/// or fewer come back unchanged apart from case. Note that the rule set is
/// not idempotent in general: "use" stems to "us", which stems to "u".
std::string stem(std::string_view word);

}  // namespace scistory::text
