// SPDX-License-Identifier: Apache-2.0
//
// pcrpa - pattern synthesis for polarization-coding reconfigurable phased arrays
// Copyright (C) 2026 The pcrpa authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "pcrpa/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace pcrpa
{

std::size_t thread_count()
{
    if (const char *env = std::getenv("PCRPA_THREADS"))
    {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1)
            return std::size_t(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)> &body)
{
    if (end <= begin)
        return;
    const std::size_t count = end - begin;
    const std::size_t workers = std::min(thread_count(), count);
    if (workers <= 1)
    {
        for (std::size_t i = begin; i < end; ++i)
            body(i);
        return;
    }

    std::exception_ptr error;
    std::mutex m;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
    {
        const std::size_t lo = begin + count * w / workers;
        const std::size_t hi = begin + count * (w + 1) / workers;
        pool.emplace_back([&, lo, hi] {
            try
            {
                for (std::size_t i = lo; i < hi; ++i)
                    body(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(m);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace pcrpa
