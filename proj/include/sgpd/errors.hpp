// Copyright 2026 The SGPD Authors
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

#ifndef SGPD_ERRORS_HPP_
#define SGPD_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgpd {

// Invalid parameters or inputs supplied by the caller's configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// API misuse: mismatched fields, shapes that disagree, duplicate points.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NotEnoughResults : public std::runtime_error {
 public:
  NotEnoughResults(std::size_t have, std::size_t need)
      : std::runtime_error("not enough worker results: have " +
                           std::to_string(have) + ", need " +
                           std::to_string(need)),
        have_(have),
        need_(need) {}

  std::size_t have() const { return have_; }
  std::size_t need() const { return need_; }

 private:
  std::size_t have_;
  std::size_t need_;
};

}  // namespace sgpd

#endif  // SGPD_ERRORS_HPP_
