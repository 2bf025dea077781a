#pragma once

#include <string_view>

namespace mathreuse::data {

// Contents of a file shipped under data/, compiled into the library so the
// tools need no install-time lookup. Throws std::out_of_range for unknown names.
std::string_view embedded(std::string_view name);

}  // namespace mathreuse::data
