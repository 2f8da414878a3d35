// Copyright 2026 The BaIT Authors. All Rights Reserved.
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
// =============================================================================

#ifndef BAIT_LOG_HPP_
#define BAIT_LOG_HPP_

#include <iostream>
#include <sstream>
#include <string_view>

namespace bait::log {

enum class Level { kDebug = 0, kInfo = 1, kWarning = 2, kError = 3, kOff = 4 };

inline Level& threshold() {
  static Level level = Level::kInfo;
  return level;
}

inline void set_level(Level level) { threshold() = level; }

inline void write(Level level, std::string_view message) {
  if (level < threshold()) return;
  static constexpr const char* kTags[] = {"debug", "info", "warning", "error"};
  std::clog << "[" << kTags[static_cast<int>(level)] << "] " << message << '\n';
}

template <typename... Args>
void info(const Args&... args) {
  if (Level::kInfo < threshold()) return;
  std::ostringstream os;
  (os << ... << args);
  write(Level::kInfo, os.str());
}

template <typename... Args>
void warn(const Args&... args) {
  if (Level::kWarning < threshold()) return;
  std::ostringstream os;
  (os << ... << args);
  write(Level::kWarning, os.str());
}

}  // namespace bait::log

#endif  // BAIT_LOG_HPP_
