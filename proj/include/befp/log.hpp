#pragma once

#include <functional>
#include <string>

namespace befp {

/// Warnings raised by the numerical kernels (small-time guards, boundary
/// decay notes). The default sink writes to stderr.
using WarningSink = std::function<void(const std::string&)>;

void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace befp
