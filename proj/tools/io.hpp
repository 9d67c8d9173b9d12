/*
   Copyright 2026 The rro authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rro::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitInput = 3,
    kExitFit = 4,
    kExitCap = 5,
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InputFile {
    std::string path;
    std::vector<double> values;
    std::string sha256;  // hex digest of the raw bytes
};

/// One value per line; blank lines and lines starting with '#' are skipped.
/// Throws InputError for unreadable files, non-numeric or non-finite lines
/// (with the line number) and files with fewer than `min_values` values.
InputFile read_values(const std::string& path, std::size_t min_values = 2);

std::string sha256_hex(const std::string& bytes);

/// "15,15;20,40" -> {(15,15), (20,40)}. Throws UsageError.
std::vector<std::pair<std::size_t, std::size_t>> parse_sizes(const std::string& text);
/// "0.01,0.05" -> {0.01, 0.05}. Throws UsageError.
std::vector<double> parse_alphas(const std::string& text);

/// Shortest decimal text that reads back to the same double; "inf", "-inf".
std::string format_number(double v);

}  // namespace rro::cli
