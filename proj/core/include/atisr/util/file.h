// atisr/util/file.h

// Copyright 2026 The atisr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef ATISR_UTIL_FILE_H_
#define ATISR_UTIL_FILE_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace atisr {

/// Whole file as bytes; IntegrityError naming the path if it cannot be read.
std::string ReadFileBytes(const std::filesystem::path& path);
/// Writes `bytes`, creating parent directories.
void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace atisr

#endif  // ATISR_UTIL_FILE_H_
