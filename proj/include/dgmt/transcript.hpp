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

// Wire format for transcripts: a big-endian u32 user count, a big-endian u64
// count of public bits used, then per user a big-endian u32 bit length
// followed by ceil(length / 8) bytes packed most-significant-bit first, with
// the final byte zero-padded.

#ifndef DGMT_TRANSCRIPT_HPP_
#define DGMT_TRANSCRIPT_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dgmt/protocols.hpp"

namespace dgmt {

std::vector<std::uint8_t> serialize_transcript(const Transcript& transcript);

// Inverse of serialize_transcript. Throws kParameter on truncated input,
// trailing bytes or nonzero padding bits.
Transcript deserialize_transcript(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace dgmt

#endif  // DGMT_TRANSCRIPT_HPP_
