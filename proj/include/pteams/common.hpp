// Copyright 2026 The pteams Authors
//
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

#pragma once

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace pteams {

using AuthorId = std::uint32_t;
using PubIndex = std::uint32_t;
using TeamId = std::uint32_t;
using Year = int;

/// Inclusive range of calendar years.
struct Period {
  Year start = 0;
  Year end = 0;

  [[nodiscard]] bool contains(Year y) const { return start <= y && y <= end; }
  [[nodiscard]] bool contains(const Period& o) const {
    return start <= o.start && o.end <= end;
  }
  [[nodiscard]] bool intersects(const Period& o) const {
    return start <= o.end && o.start <= end;
  }
  [[nodiscard]] int length() const { return end - start + 1; }

  auto operator<=>(const Period&) const = default;
};

/// Unordered author pair, stored with the smaller id first.
struct AuthorPair {
  AuthorId a = 0;
  AuthorId b = 0;

  static AuthorPair of(AuthorId x, AuthorId y) {
    return x < y ? AuthorPair{x, y} : AuthorPair{y, x};
  }
  [[nodiscard]] std::uint64_t key() const {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }
  static AuthorPair from_key(std::uint64_t k) {
    return {static_cast<AuthorId>(k >> 32), static_cast<AuthorId>(k & 0xffffffffu)};
  }

  auto operator<=>(const AuthorPair&) const = default;
};

/// Raised for malformed or unreadable inputs.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails; indicates a bug upstream.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Resolves a requested thread count; 0 means hardware concurrency.
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Work items are
/// claimed dynamically, so fn must only write to slot i of any shared output.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
        next = n;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace pteams
