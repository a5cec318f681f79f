// Copyright 2026 The fvie Authors.
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


#ifndef FVIE_CSV_HPP
#define FVIE_CSV_HPP

// Locale-independent number formatting for CSV and report output.

#include <array>
#include <charconv>
#include <initializer_list>
#include <string>
#include <string_view>
#include <system_error>

#include <fvie/fuzzy_number.hpp>
#include <fvie/grid_function.hpp>

namespace fvie
{

// General format, 17 significant digits.
inline std::string format_double(double x)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
    if (res.ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf.data(), res.ptr);
}

inline void append_csv_row(std::string &out, std::initializer_list<std::string_view> cells)
{
    bool first = true;
    for (auto c : cells) {
        if (!first) {
            out += ',';
        }
        out += c;
        first = false;
    }
    out += '\n';
}

// One row per (node, level): v,mu,lower,upper.
inline std::string grid_function_csv(const FuzzyGridFunction &f, std::string_view lower_name = "lower",
                                     std::string_view upper_name = "upper")
{
    std::string out;
    append_csv_row(out, {"v", "mu", lower_name, upper_name});
    const auto &mu = f.mu_grid();
    for (std::size_t j = 0; j < f.size(); ++j) {
        const auto v = format_double(f.grid().node(j));
        for (std::size_t k = 0; k < mu.size(); ++k) {
            append_csv_row(out, {v, format_double(mu[k]), format_double(f[j].lower(k)), format_double(f[j].upper(k))});
        }
    }
    return out;
}

} // namespace fvie

#endif // FVIE_CSV_HPP
