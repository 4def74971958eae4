// Copyright 2026 The Hytrack Authors
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

// Line-protocol detector stand-in for transport tests.
// Usage: fake_detector <ok|error|garbage|wrong-id|silent>

#include <iostream>
#include <string>

#include "support/test_support.h"

int main(int argc, char** argv) {
  using hytrack::testing::FakeMode;
  const FakeMode mode =
      hytrack::testing::ParseFakeMode(argc > 1 ? argv[1] : "ok");
  std::string line;
  while (std::getline(std::cin, line)) {
    const std::string reply = hytrack::testing::FakeRespond(line, mode);
    if (reply.empty()) continue;
    std::cout << reply << '\n' << std::flush;
  }
  return 0;
}
