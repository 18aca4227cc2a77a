#pragma once

#include <functional>
#include <string>

namespace rissop {

using WarningSink = std::function<void(const std::string&)>;

// Default sink writes "warning: <msg>" to stderr. Passing an empty function
// restores it.
void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

} // namespace rissop
