// Copyright 2026 The elecast Authors. All rights reserved.
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

#pragma once

#include <algorithm>
#include <array>
#include <string_view>

namespace elecast {

// Code used for national polls.
inline constexpr std::string_view kNational = "US";

// The 50 states plus DC, alphabetical by code.
inline constexpr std::array<std::string_view, 51> kStateCodes = {
    "AK", "AL", "AR", "AZ", "CA", "CO", "CT", "DC", "DE", "FL", "GA",
    "HI", "IA", "ID", "IL", "IN", "KS", "KY", "LA", "MA", "MD", "ME",
    "MI", "MN", "MO", "MS", "MT", "NC", "ND", "NE", "NH", "NJ", "NM",
    "NV", "NY", "OH", "OK", "OR", "PA", "RI", "SC", "SD", "TN", "TX",
    "UT", "VA", "VT", "WA", "WI", "WV", "WY"};

// States with too few 2016 polls for any state-level regression; these are
// calibrated from past election results instead.
inline constexpr std::array<std::string_view, 13> kDataPoorStates = {
    "AL", "AK", "HI", "KY", "MT", "NE", "ND",
    "OK", "SD", "TN", "WV", "WY", "DC"};

inline bool is_state_code(std::string_view code) {
  return std::binary_search(kStateCodes.begin(), kStateCodes.end(), code);
}

inline bool is_region_code(std::string_view code) {
  return code == kNational || is_state_code(code);
}

inline bool is_data_poor(std::string_view code) {
  return std::find(kDataPoorStates.begin(), kDataPoorStates.end(), code) !=
         kDataPoorStates.end();
}

}  // namespace elecast
