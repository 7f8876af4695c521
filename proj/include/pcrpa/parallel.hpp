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

#pragma once

#include <cstddef>
#include <functional>

namespace pcrpa
{

// Worker count: PCRPA_THREADS if set (>= 1), otherwise the hardware concurrency.
std::size_t thread_count();

// Calls body(i) for every i in [begin, end). Iterations are split into contiguous blocks, one per
// worker; the body must only write to per-index state. Exceptions are rethrown on the caller.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)> &body);

} // namespace pcrpa
