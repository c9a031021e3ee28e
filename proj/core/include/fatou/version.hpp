// Copyright 2026 The Fatou Authors
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

#ifndef FATOU_VERSION_HPP
#define FATOU_VERSION_HPP

namespace fatou {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kVersionString = "fatou 0.1.0";
/// Bumped whenever a JSON or CSV layout changes.
inline constexpr int kSchemaVersion = 1;

}  // namespace fatou

#endif  // FATOU_VERSION_HPP
