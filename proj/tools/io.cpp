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

#include "io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace rro::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& token, double& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 digest failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return hex.str();
}

InputFile read_values(const std::string& path, std::size_t min_values) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream raw;
    raw << in.rdbuf();
    if (in.bad()) throw InputError("cannot read '" + path + "'");

    InputFile file;
    file.path = path;
    file.sha256 = sha256_hex(raw.str());
    std::istringstream lines(raw.str());
    std::string line;
    std::size_t number = 0;
    while (std::getline(lines, line)) {
        ++number;
        const std::string token = trim(line);
        if (token.empty() || token.front() == '#') continue;
        double v = 0.0;
        if (!parse_double(token, v)) {
            throw InputError(path + ":" + std::to_string(number) + ": not a number: '" + token +
                             "'");
        }
        if (!std::isfinite(v)) {
            throw InputError(path + ":" + std::to_string(number) + ": value is not finite");
        }
        file.values.push_back(v);
    }
    if (file.values.size() < min_values) {
        throw InputError(path + ": needs at least " + std::to_string(min_values) +
                         " values, found " + std::to_string(file.values.size()));
    }
    return file;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_sizes(const std::string& text) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const std::string& pair : split(text, ';')) {
        if (pair.empty()) continue;
        const std::vector<std::string> parts = split(pair, ',');
        std::size_t m = 0;
        std::size_t n = 0;
        const auto parse = [](const std::string& s, std::size_t& v) {
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            return ec == std::errc() && ptr == s.data() + s.size() && v >= 2;
        };
        if (parts.size() != 2 || !parse(parts[0], m) || !parse(parts[1], n)) {
            throw UsageError("bad size pair '" + pair + "' (expected m,n with m, n >= 2)");
        }
        out.emplace_back(m, n);
    }
    if (out.empty()) throw UsageError("no size pairs in '" + text + "'");
    return out;
}

std::vector<double> parse_alphas(const std::string& text) {
    std::vector<double> out;
    for (const std::string& item : split(text, ',')) {
        if (item.empty()) continue;
        double a = 0.0;
        if (!parse_double(item, a) || !(a > 0.0 && a < 1.0)) {
            throw UsageError("bad significance level '" + item + "'");
        }
        out.push_back(a);
    }
    if (out.empty()) throw UsageError("no significance levels in '" + text + "'");
    return out;
}

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace rro::cli
