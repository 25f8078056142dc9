// Copyright 2026 The qtrade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QTRADE_PARALLEL_H_
#define QTRADE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace qtrade {

// Worker cap from QTG_THREADS; unset, 0 or unparsable means
// std::thread::hardware_concurrency().
std::size_t worker_count();

// Runs body(i) for every i in [0, count). Callers write results into
// index-addressed storage so the outcome does not depend on scheduling. The
// first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qtrade

#endif  // QTRADE_PARALLEL_H_
