#include "rissop/log.hpp"

#include <iostream>
#include <mutex>

namespace rissop {

namespace {

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

WarningSink& sink_slot() {
    static WarningSink sink;
    return sink;
}

} // namespace

void set_warning_sink(WarningSink sink) {
    std::lock_guard lock(sink_mutex());
    sink_slot() = std::move(sink);
}

void warn(const std::string& message) {
    std::lock_guard lock(sink_mutex());
    if (sink_slot()) {
        sink_slot()(message);
    } else {
        std::cerr << "warning: " << message << '\n';
    }
}

} // namespace rissop
