// SPDX-License-Identifier: Apache-2.0
//
// cspa - channel static partner antenna simulator and analysis toolkit
// Copyright (C) 2026 The cspa authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef CSPA_KEYVALUE_HPP
#define CSPA_KEYVALUE_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cspa
{
    // INI-style text: "[section]" headers, "key = value" lines, '#' or ';' comments.
    // Shared by scenario files and model parameter files.

    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(std::size_t line, const std::string &what)
            : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
        std::size_t line() const { return line_; }

    private:
        std::size_t line_;
    };

    struct KeyValueEntry
    {
        std::string key;
        std::string value;
        std::size_t line = 0;
    };

    struct KeyValueSection
    {
        std::string name; // Empty for keys before the first header
        std::size_t line = 0;
        std::vector<KeyValueEntry> entries;

        const KeyValueEntry *find(std::string_view key) const;
    };

    struct KeyValueDocument
    {
        std::vector<KeyValueSection> sections; // In file order

        const KeyValueSection *find(std::string_view name) const;
    };

    // - Throws ConfigError on malformed lines, duplicate sections or duplicate keys
    KeyValueDocument parse_keyvalue(std::istream &in);

    std::string_view trim(std::string_view s);

    // Strict: the whole string must be a number
    std::optional<double> parse_double(std::string_view s);
}

#endif
