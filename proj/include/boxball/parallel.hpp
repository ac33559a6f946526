// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file boxball/parallel.hpp
//! Trial-level parallel map with results stored by index.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace boxball
{
/*!
 * Worker count: `requested` if positive, else BOXBALL_THREADS, else the
 * hardware concurrency.
 */
int resolve_threads(int requested);

/*!
 * Evaluate f(0..n-1) on `threads` workers. Output slot i always holds
 * f(i), so the result does not depend on the schedule.
 */
template<class F>
auto parallel_map(long n, int threads, F&& f) -> std::vector<decltype(f(0L))>
{
    using R = decltype(f(0L));
    std::vector<R> out(static_cast<std::size_t>(n));
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (long i = next++; i < n; i = next++)
        {
            try
            {
                out[static_cast<std::size_t>(i)] = f(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                {
                    error = std::current_exception();
                }
                next = n;
            }
        }
    };
    int const workers = static_cast<int>(std::min<long>(std::max(threads, 1), std::max(n, 1L)));
    if (workers <= 1)
    {
        work();
    }
    else
    {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
        {
            pool.emplace_back(work);
        }
        for (auto& t : pool)
        {
            t.join();
        }
    }
    if (error)
    {
        std::rethrow_exception(error);
    }
    return out;
}

}  // namespace boxball
