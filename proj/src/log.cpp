#include "befp/log.hpp"

#include <iostream>
#include <mutex>

namespace befp {

namespace {

std::mutex& sink_mutex()
{
    static std::mutex m;
    return m;
}

WarningSink& sink()
{
    static WarningSink s = [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
    return s;
}

}  // namespace

void set_warning_sink(WarningSink s)
{
    std::lock_guard lock(sink_mutex());
    sink() = std::move(s);
}

void warn(const std::string& message)
{
    std::lock_guard lock(sink_mutex());
    if (sink())
        sink()(message);
}

}  // namespace befp
