#ifndef SPINERGY_PARALLEL_HPP
#define SPINERGY_PARALLEL_HPP

#include <cstdlib>
#include <thread>
#include <vector>

namespace spinergy {

// worker cap: SPINERGY_THREADS, else hardware concurrency
inline int worker_count() {
    if (const char* env = std::getenv("SPINERGY_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

// static block split; bodies must not share mutable state across indices
template <class F>
void parallel_for(int begin, int end, F&& body) {
    int nw = worker_count();
    int count = end - begin;
    if (nw <= 1 || count <= 1) {
        for (int i = begin; i < end; ++i) body(i);
        return;
    }
    nw = std::min(nw, count);
    std::vector<std::thread> pool;
    pool.reserve(nw - 1);
    auto run = [&](int w) {
        int lo = begin + (count*w)/nw, hi = begin + (count*(w + 1))/nw;
        for (int i = lo; i < hi; ++i) body(i);
    };
    for (int w = 1; w < nw; ++w) pool.emplace_back(run, w);
    run(0);
    for (auto& t : pool) t.join();
}

} // namespace spinergy

#endif
