// SPDX-License-Identifier: Apache-2.0
//
// mmwave-cellsearch: link-level initial cell search simulator for mmWave receivers
// Copyright (C) 2026 The mmwave-cellsearch authors
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

#ifndef CELLSEARCH_ERRORS_HPP
#define CELLSEARCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cellsearch
{

/// Invalid or incomplete configuration input. key() names the offending entry.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string key, const std::string &message)
        : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key))
    {
    }

    const std::string &key() const { return key_; }

  private:
    std::string key_;
};

} // namespace cellsearch

#endif
