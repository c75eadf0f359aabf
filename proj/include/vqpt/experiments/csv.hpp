// Copyright 2026 The vqpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// CSV output: `.` decimal separator, %.17g numbers, LF line endings.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "vqpt/error.hpp"

namespace vqpt::experiments {

inline std::string format_cell(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

using CsvRow = std::vector<std::string>;

inline std::string to_csv(const std::vector<std::string> &header, const std::vector<CsvRow> &rows) {
    std::string out;
    const auto line = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].find_first_of(",\n\"") != std::string::npos) {
                throw DomainError("csv cell '" + cells[i] + "' contains a separator");
            }
            out += (i ? "," : "") + cells[i];
        }
        out += "\n";
    };
    line(header);
    for (const auto &r : rows) {
        if (r.size() != header.size()) {
            throw DimensionError("csv row width does not match the header");
        }
        line(r);
    }
    return out;
}

inline void write_text(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    // binary mode keeps LF endings on every platform
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

} // namespace vqpt::experiments
