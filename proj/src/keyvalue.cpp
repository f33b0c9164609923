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

#include "cspa/keyvalue.hpp"

#include <charconv>
#include <istream>

namespace cspa
{
    std::string_view trim(std::string_view s)
    {
        constexpr std::string_view ws = " \t\r\n";
        std::size_t b = s.find_first_not_of(ws);
        if (b == std::string_view::npos)
            return {};
        std::size_t e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    }

    std::optional<double> parse_double(std::string_view s)
    {
        s = trim(s);
        if (!s.empty() && s.front() == '+')
            s.remove_prefix(1);
        if (s.empty())
            return std::nullopt;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            return std::nullopt;
        return v;
    }

    const KeyValueEntry *KeyValueSection::find(std::string_view key) const
    {
        for (const auto &e : entries)
            if (e.key == key)
                return &e;
        return nullptr;
    }

    const KeyValueSection *KeyValueDocument::find(std::string_view name) const
    {
        for (const auto &s : sections)
            if (s.name == name)
                return &s;
        return nullptr;
    }

    KeyValueDocument parse_keyvalue(std::istream &in)
    {
        KeyValueDocument doc;
        std::string raw;
        std::size_t line_no = 0;
        while (std::getline(in, raw))
        {
            ++line_no;
            std::string_view line = trim(raw);
            if (line.empty() || line.front() == '#' || line.front() == ';')
                continue;

            if (line.front() == '[')
            {
                if (line.back() != ']')
                    throw ConfigError(line_no, "unterminated section header");
                std::string name(trim(line.substr(1, line.size() - 2)));
                if (name.empty())
                    throw ConfigError(line_no, "empty section name");
                if (doc.find(name))
                    throw ConfigError(line_no, "duplicate section [" + name + "]");
                doc.sections.push_back({name, line_no, {}});
                continue;
            }

            std::size_t eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError(line_no, "expected 'key = value'");
            std::string key(trim(line.substr(0, eq)));
            std::string_view value = trim(line.substr(eq + 1));
            // Trailing comments
            if (std::size_t hash = value.find('#'); hash != std::string_view::npos)
                value = trim(value.substr(0, hash));
            if (key.empty())
                throw ConfigError(line_no, "empty key");

            if (doc.sections.empty())
                doc.sections.push_back({"", line_no, {}});
            auto &section = doc.sections.back();
            if (section.find(key))
                throw ConfigError(line_no, "duplicate key '" + key + "' in [" + section.name + "]");
            section.entries.push_back({key, std::string(value), line_no});
        }
        return doc;
    }
}
