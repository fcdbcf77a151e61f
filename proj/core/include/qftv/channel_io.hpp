// Copyright 2026 The qftverify Authors
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

#ifndef QFTV_CHANNEL_IO_HPP_
#define QFTV_CHANNEL_IO_HPP_

#include <iosfwd>
#include <string>

#include "qftv/channel.hpp"

namespace qftv {

inline constexpr int kChannelFormatVersion = 1;

/// Text format:
///
///   qftv-channel 1
///   dim <N>
///   kraus <r>
///   op 0
///   <re> <im> <re> <im> ...      one line per matrix row
///   op 1
///   ...
///
/// Numbers are C99 hexfloats, so reading back is bit-exact.
void write_channel(std::ostream &out, const KrausChannel &c);
KrausChannel read_channel(std::istream &in);

void save_channel(const std::string &path, const KrausChannel &c);
KrausChannel load_channel(const std::string &path);

}  // namespace qftv

#endif  // QFTV_CHANNEL_IO_HPP_
