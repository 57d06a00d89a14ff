// Copyright 2026 The PPS Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPS_SHA256_HPP_
#define PPS_SHA256_HPP_

#include <string>
#include <string_view>

namespace pps {

/// Lowercase hexadecimal SHA-256 digest of `bytes` (64 characters).
std::string sha256_hex(std::string_view bytes);

/// True for exactly 64 lowercase hexadecimal characters.
bool is_hex64(std::string_view text);

}  // namespace pps

#endif  // PPS_SHA256_HPP_
