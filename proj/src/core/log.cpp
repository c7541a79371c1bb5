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

#include "core/log.hpp"

#include <iostream>
#include <mutex>

namespace dfusion {
namespace {

std::mutex& SinkMutex() {
  static std::mutex mu;
  return mu;
}

void StderrSink(LogLevel level, std::string_view message) {
  static constexpr const char* kNames[] = {"info", "warning", "error"};
  std::cerr << "[" << kNames[static_cast<int>(level)] << "] " << message
            << "\n";
}

LogSink& Sink() {
  static LogSink sink = StderrSink;
  return sink;
}

}  // namespace

void SetLogSink(LogSink sink) {
  std::lock_guard<std::mutex> lock(SinkMutex());
  Sink() = sink ? std::move(sink) : LogSink(StderrSink);
}

void Log(LogLevel level, std::string_view message) {
  std::lock_guard<std::mutex> lock(SinkMutex());
  if (Sink()) Sink()(level, message);
}

}  // namespace dfusion
