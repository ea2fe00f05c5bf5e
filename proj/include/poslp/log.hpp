#pragma once

#include <functional>
#include <string_view>

namespace poslp {

using WarningSink = std::function<void(std::string_view)>;

/// Replaces the process-wide warning sink (default: one line on stderr).
/// Passing an empty function silences warnings. Returns the previous sink.
WarningSink set_warning_sink(WarningSink sink);

void warn(std::string_view message);

}  // namespace poslp
