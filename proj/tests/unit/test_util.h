// Copyright 2026 The mnlrank Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MNLRANK_TESTS_UNIT_TEST_UTIL_H_
#define MNLRANK_TESTS_UNIT_TEST_UTIL_H_

#include <optional>
#include <span>
#include <vector>

#include "mnlrank/error.h"

namespace mnlrank::testing {

// Code of the mnlrank::Error thrown by f(), or nullopt if none was thrown.
template <typename F>
std::optional<ErrorCode> ThrownCode(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// gMock container matchers need a const_iterator, which std::span lacks.
template <typename T>
std::vector<T> ToVector(std::span<const T> s) {
  return {s.begin(), s.end()};
}

}  // namespace mnlrank::testing

#define EXPECT_THROWS_CODE(stmt, code) \
  EXPECT_EQ(::mnlrank::testing::ThrownCode([&] { stmt; }), \
            std::optional<::mnlrank::ErrorCode>(code))

#endif  // MNLRANK_TESTS_UNIT_TEST_UTIL_H_
