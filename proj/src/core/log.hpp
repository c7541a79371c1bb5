/* Copyright 2026 The dfusion Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <functional>
#include <string_view>

namespace dfusion {

enum class LogLevel { kInfo = 0, kWarning = 1, kError = 2 };

using LogSink = std::function<void(LogLevel, std::string_view)>;

// Replaces the process-wide sink. An empty sink restores the default,
// which writes to stderr.
void SetLogSink(LogSink sink);
void Log(LogLevel level, std::string_view message);

inline void LogWarning(std::string_view message) {
  Log(LogLevel::kWarning, message);
}
inline void LogInfo(std::string_view message) { Log(LogLevel::kInfo, message); }

}  // namespace dfusion
