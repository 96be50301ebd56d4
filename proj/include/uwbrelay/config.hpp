// SPDX-License-Identifier: Apache-2.0
//
// uwbrelay - capacity bounds for frequency-selective UWB relay channels
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

#pragma once

// Flat `section.key = value` configuration files. Blank lines and lines
// starting with '#' are ignored; lists are comma separated.

#include "uwbrelay/experiments.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uwbrelay
{

class ParseError : public std::runtime_error
{
  public:
    ParseError(const std::string &key, std::size_t line, const std::string &message);

    const std::string &key() const { return key_; }
    std::size_t line() const { return line_; }
    const std::string &message() const { return message_; }

  private:
    std::string key_;
    std::size_t line_;
    std::string message_;
};

/// Parses configuration text on top of the defaults. Does not validate ranges.
ExperimentConfig parse_config(std::string_view text);

/// Reads, parses and validates a configuration file.
ExperimentConfig load_config(const std::string &path);

/// Sets one key from its textual value; throws ParseError for unknown keys
/// or malformed values.
void set_config_value(ExperimentConfig &config, std::string_view key, std::string_view value);

std::string get_config_value(const ExperimentConfig &config, std::string_view key);

std::vector<std::string> config_keys();

/// Canonical `key = value` listing of every setting, in a fixed order.
std::string format_config(const ExperimentConfig &config);

/// FNV-1a hash of format_config().
std::uint64_t config_hash(const ExperimentConfig &config);

} // namespace uwbrelay
