#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "isomat/graph.hpp"

namespace isomat {

/// Number of labelled looped simple graphs on n vertices:
/// 2^(n(n-1)/2 + n) bit patterns (upper-triangle adjacency, then loops).
inline std::uint64_t graph_space_size(std::size_t n) {
    return std::uint64_t{1} << (n * (n - 1) / 2 + n);
}

/// Decode index bits into a graph: upper-triangle pairs (i<j) in row-major
/// order first, then loop bits.
inline LoopedSimpleGraph graph_from_index(std::size_t n, std::uint64_t bits) {
    LoopedSimpleGraph g(n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++k)
            if (bits >> k & 1u) g.set_edge(i, j, true);
    for (std::size_t v = 0; v < n; ++v)
        if (bits >> (k + v) & 1u) g.set_loop(v, true);
    return g;
}

inline LoopedSimpleGraph random_graph(std::size_t n, std::mt19937_64& rng) {
    std::uint64_t space = graph_space_size(n);
    return graph_from_index(n, rng() % space);
}

/// Failure collector used by the verification suites. Thread-compatible
/// when each worker owns its own instance; merge() combines results.
struct Checker {
    long long cases = 0;
    long long failures = 0;
    std::vector<std::string> messages;  // first few failures only

    void check(bool ok, const std::function<std::string()>& describe) {
        ++cases;
        if (ok) return;
        ++failures;
        if (messages.size() < 5) messages.push_back(describe());
    }

    void merge(const Checker& other) {
        cases += other.cases;
        failures += other.failures;
        for (const auto& m : other.messages)
            if (messages.size() < 5) messages.push_back(m);
    }

    bool ok() const { return failures == 0; }
};

/// Splits [0, total) into chunks and runs body(first, last, checker) on a
/// small thread pool; results merge deterministically in chunk order.
inline Checker parallel_check(std::uint64_t total,
                              const std::function<void(std::uint64_t, std::uint64_t, Checker&)>& body,
                              unsigned threads = 0) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t chunk = (total + threads - 1) / threads;
    if (chunk == 0) chunk = 1;
    std::vector<Checker> results((total + chunk - 1) / chunk);
    std::vector<std::thread> pool;
    for (std::size_t c = 0; c < results.size(); ++c) {
        std::uint64_t first = c * chunk;
        std::uint64_t last = std::min(total, first + chunk);
        pool.emplace_back([&, c, first, last] { body(first, last, results[c]); });
    }
    for (auto& t : pool) t.join();
    Checker merged;
    for (const auto& r : results) merged.merge(r);
    return merged;
}

}  // namespace isomat
