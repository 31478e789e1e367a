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

#include "dgmt/transcript.hpp"

#include <algorithm>
#include <limits>

#include "dgmt/errors.hpp"

namespace dgmt {
namespace {

void put_be(std::vector<std::uint8_t>& out, std::uint64_t value, int bytes) {
  for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t be(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v = (v << 8) | bytes_[pos_++];
    return v;
  }

  std::uint8_t byte() {
    need(1);
    return bytes_[pos_++];
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) fail(Errc::kParameter, "transcript: truncated input");
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize_transcript(const Transcript& transcript) {
  const auto limit = std::numeric_limits<std::uint32_t>::max();
  if (transcript.messages.size() > limit) {
    fail(Errc::kParameter, "transcript: too many users to serialize");
  }
  std::vector<std::uint8_t> out;
  put_be(out, transcript.messages.size(), 4);
  put_be(out, transcript.public_bits_used, 8);
  for (const auto& msg : transcript.messages) {
    if (msg.size() > limit) fail(Errc::kParameter, "transcript: message too long to serialize");
    put_be(out, msg.size(), 4);
    std::uint8_t acc = 0;
    for (std::size_t j = 0; j < msg.size(); ++j) {
      acc = static_cast<std::uint8_t>(acc | ((msg[j] & 1u) << (7 - j % 8)));
      if (j % 8 == 7) {
        out.push_back(acc);
        acc = 0;
      }
    }
    if (msg.size() % 8 != 0) out.push_back(acc);
  }
  return out;
}

Transcript deserialize_transcript(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  Transcript t;
  const auto n = in.be(4);
  t.public_bits_used = in.be(8);
  t.messages.resize(n);
  t.bits_sent.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto len = static_cast<std::size_t>(in.be(4));
    auto& msg = t.messages[k];
    msg.resize(len);
    for (std::size_t j = 0; j < len; j += 8) {
      const std::uint8_t b = in.byte();
      const std::size_t used = std::min<std::size_t>(8, len - j);
      for (std::size_t i = 0; i < used; ++i) msg[j + i] = (b >> (7 - i)) & 1u;
      if (used < 8 && (b & ((1u << (8 - used)) - 1)) != 0) {
        fail(Errc::kParameter, "transcript: nonzero padding bits");
      }
    }
    t.bits_sent[k] = len;
  }
  if (!in.done()) fail(Errc::kParameter, "transcript: trailing bytes");
  return t;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

}  // namespace dgmt
