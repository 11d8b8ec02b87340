/*
 *  Copyright 2026 cnnrec contributors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cnnrec {

/// Failure while decoding an external input (dataset file, JSON document).
/// Carries the offending path and the byte offset where decoding stopped.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string path, std::uint64_t offset, const std::string& message)
        : std::runtime_error(path + " @ byte " + std::to_string(offset) + ": " + message),
          path_(std::move(path)),
          offset_(offset) {}

    const std::string& path() const noexcept { return path_; }
    std::uint64_t offset() const noexcept { return offset_; }

private:
    std::string path_;
    std::uint64_t offset_;
};

} // namespace cnnrec
