#include "excess/config.hpp"

#include <cstdlib>
#include <thread>

namespace excess {

namespace {

int env_int(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    long parsed = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || parsed <= 0) return fallback;
    return static_cast<int>(parsed);
}

Caps load_caps() {
    Caps c;
    c.max_recurrence_n = env_int("EXCESS_ATLAS_MAX_N", c.max_recurrence_n);
    c.max_oracle_n = env_int("EXCESS_ATLAS_MAX_ORACLE", c.max_oracle_n);
    c.threads = env_int("EXCESS_ATLAS_THREADS", c.threads);
    return c;
}

}  // namespace

const Caps& caps() {
    static const Caps c = load_caps();
    return c;
}

int worker_count(int requested) {
    int limit = requested > 0 ? requested : caps().threads;
    if (limit <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        limit = hw > 0 ? static_cast<int>(hw) : 1;
    }
    return limit < 1 ? 1 : limit;
}

}  // namespace excess
