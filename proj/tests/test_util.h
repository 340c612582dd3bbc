// tests/test_util.h

// Copyright 2026  The hdspeech Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef HDSPEECH_TESTS_TEST_UTIL_H_
#define HDSPEECH_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "hdspeech/error.h"

namespace testutil {

// Kind of the hdspeech::Error thrown by fn, or nullopt if none was thrown.
inline std::optional<hdspeech::ErrorKind> ErrorOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const hdspeech::Error &e) {
    return e.kind();
  }
  return std::nullopt;
}

inline double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace testutil

#endif  // HDSPEECH_TESTS_TEST_UTIL_H_
