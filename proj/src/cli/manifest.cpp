#include "rankone/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <thread>

namespace rankone::cli {

std::string format_double(double x)
{
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

std::string fnv1a_hex(std::string_view data)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

nlohmann::ordered_json RunManifest::to_json() const
{
    return {
        {"command", command},
        {"space", space},
        {"params", params},
        {"tool_version", tool_version},
        {"output_checksum", output_checksum},
    };
}

unsigned worker_count()
{
    if (const char* value = std::getenv(kThreadsVariable)) {
        char* end = nullptr;
        long n = std::strtol(value, &end, 10);
        if (end != value && *end == '\0' && n >= 1) {
            return unsigned(std::min(n, 256L));
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn)
{
    std::vector<std::exception_ptr> errors(n);
    workers = unsigned(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back(work);
        }
        for (auto& t : threads) {
            t.join();
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace rankone::cli
