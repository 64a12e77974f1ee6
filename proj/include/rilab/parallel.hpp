#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace rilab {

/// Worker count: RILAB_THREADS if set and positive, else the hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("RILAB_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// out[i] = f(in[i]). Results keep input order whatever the completion order;
/// the first exception (by index) is rethrown after all workers finish.
template <class T, class F>
auto parallel_map(const std::vector<T>& in, F&& f) -> std::vector<decltype(f(in.front()))> {
    using R = decltype(f(in.front()));
    std::vector<R> out(in.size());
    const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(in.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = f(in[i]);
        return out;
    }
    std::vector<std::exception_ptr> errors(in.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < in.size(); i = next++) {
            try {
                out[i] = f(in[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace rilab
