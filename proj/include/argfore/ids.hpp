// Copyright 2026 The argfore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ARGFORE_IDS_HPP_
#define ARGFORE_IDS_HPP_

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace argfore {

// Opaque string token distinguished by tag so argument and user ids cannot be
// mixed up.
template <typename Tag>
class StrongId {
 public:
  StrongId() = default;
  explicit StrongId(std::string value) : value_(std::move(value)) {}
  explicit StrongId(std::string_view value) : value_(value) {}
  explicit StrongId(const char* value) : value_(value) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const StrongId&, const StrongId&) = default;
  friend bool operator==(const StrongId&, const StrongId&) = default;

  friend std::ostream& operator<<(std::ostream& os, const StrongId& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

using ArgumentId = StrongId<struct ArgumentIdTag>;
using UserId = StrongId<struct UserIdTag>;

// Nonempty and free of control characters.
bool is_well_formed_token(std::string_view token);

}  // namespace argfore

template <typename Tag>
struct std::hash<argfore::StrongId<Tag>> {
  std::size_t operator()(const argfore::StrongId<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

#endif  // ARGFORE_IDS_HPP_
