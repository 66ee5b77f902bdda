#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "litsynth/record.hpp"

namespace litsynth {

struct TaskFailure {
    std::string canonical_id;
    std::string message;
};

template <typename R>
struct MapResult {
    std::vector<R> outputs;  // ordered by the input record's canonical_id
    std::vector<TaskFailure> failures;
};

/// Runs `task` once per record on `worker_count` threads pulling from a
/// shared index queue. A throwing task is recorded as a failure and never
/// affects other records. Outputs are re-sorted by canonical_id, so the
/// result does not depend on scheduling.
template <typename Task>
auto parallel_map(const std::vector<PaperRecord>& records, std::size_t worker_count, Task task)
    -> MapResult<std::invoke_result_t<Task&, const PaperRecord&>> {
    using R = std::invoke_result_t<Task&, const PaperRecord&>;
    if (worker_count == 0) throw std::invalid_argument("worker_count must be >= 1");

    const std::size_t n = records.size();
    std::vector<std::optional<R>> slots(n);
    std::vector<std::optional<std::string>> errors(n);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                slots[i].emplace(task(records[i]));
            } catch (const std::exception& e) {
                errors[i] = e.what();
            } catch (...) {
                errors[i] = "unknown error";
            }
        }
    };
    {
        const std::size_t threads = std::min(worker_count, std::max<std::size_t>(n, 1));
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return records[a].canonical_id < records[b].canonical_id;
    });
    MapResult<R> result;
    for (std::size_t i : order) {
        if (slots[i]) result.outputs.push_back(std::move(*slots[i]));
        else result.failures.push_back({records[i].canonical_id, errors[i].value_or("no output")});
    }
    return result;
}

}  // namespace litsynth
