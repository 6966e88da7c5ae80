// Copyright 2026 The topp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace topp {

enum class LogLevel : unsigned char { kError = 0, kInfo = 1, kDebug = 2 };

// Read once from TOPP_LOG (error|info|debug); defaults to error.
LogLevel CurrentLogLevel();
void SetLogLevel(LogLevel level);

// printf-style diagnostics to stderr.
void Log(LogLevel level, const char* fmt, ...)
    __attribute__((format(printf, 2, 3)));

}  // namespace topp
