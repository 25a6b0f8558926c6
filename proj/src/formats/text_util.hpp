// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hitree::text {

bool is_space(char c) noexcept;

std::string_view trim(std::string_view s) noexcept;
std::string_view trim_left(std::string_view s) noexcept;

// Trims and folds every whitespace run (including U+00A0) into one space.
std::string collapse_whitespace(std::string_view s);

std::string to_lower(std::string_view s);

bool starts_with_ci(std::string_view s, std::string_view prefix) noexcept;

// Position of `needle` in `hay` ignoring ASCII case, or npos.
std::size_t find_ci(std::string_view hay, std::string_view needle, std::size_t from = 0) noexcept;

std::vector<std::string> split_lines(std::string_view s);

std::string replace_all(std::string s, std::string_view from, std::string_view to);

std::string repeat(std::string_view s, std::size_t times);

}  // namespace hitree::text
