/*
   Copyright 2026 The hpscan Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hpscan::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInputFailure = 1,
    kInternalFailure = 2,
};

// Runs one command line (program name excluded). Reports go to `out` unless
// --out is given; failures print one JSON object on `err`:
//   {"error":{"kind":"input","type":"ParseError","message":"...",...}}
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace hpscan::cli
