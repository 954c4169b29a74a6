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

#include <algorithm>

#include "argfore/error.hpp"
#include "argfore/ids.hpp"

namespace argfore {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kCyclicGraph: return "cyclic-graph";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kUnsupportedShape: return "unsupported-shape";
    case ErrorCode::kGeneration: return "generation";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kUndefinedTest: return "undefined-test";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

bool is_well_formed_token(std::string_view token) {
  return !token.empty() &&
         std::none_of(token.begin(), token.end(), [](char c) {
           auto u = static_cast<unsigned char>(c);
           return u < 0x20 || u == 0x7f;
         });
}

}  // namespace argfore
