// Copyright 2026 The dgmt Authors
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

#ifndef DGMT_SRC_PROTOCOLS_INTERNAL_HPP_
#define DGMT_SRC_PROTOCOLS_INTERNAL_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "dgmt/brht.hpp"
#include "dgmt/protocols.hpp"

namespace dgmt::detail {

void check_epsilon(double epsilon, const char* who);
void check_dimension(std::size_t d, const char* who);

// Every user must hold exactly `required` samples when required > 0, at
// least one otherwise, with values sized count * d.
void check_users(std::span<const UserSamples> users, std::size_t d, std::size_t required,
                 const char* who);

std::vector<BrhtSpec> sample_repetition_transforms(PublicSeed& seed, std::size_t d,
                                                   std::size_t block_length);

// Appends sign bits of head[(start + j) mod head.size()] for j < count.
inline void append_wrapped_signs(BitVector& message, std::span<const double> head,
                                 std::size_t start, std::size_t count) {
  const std::size_t L = head.size();
  std::size_t pos = start % L;
  for (std::size_t j = 0; j < count; ++j) {
    message.push_back(head[pos] > 0.0 ? 1 : 0);
    if (++pos == L) pos = 0;
  }
}

// Finishes a transcript: bits_sent mirrors message lengths.
void seal(Transcript& transcript, const PublicSeed& seed, std::size_t consumed_before);

Decision amplify(std::vector<Verdict> repetition_verdicts);

}  // namespace dgmt::detail

#endif  // DGMT_SRC_PROTOCOLS_INTERNAL_HPP_
