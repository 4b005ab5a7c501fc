// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace spinwitness {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kCacheSchemaVersion = 1;

}  // namespace spinwitness
