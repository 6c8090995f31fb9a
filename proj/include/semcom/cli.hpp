#pragma once

#include <string>
#include <vector>

namespace semcom {

// Exit codes: 0 ok, 1 usage, 2 I/O or data, 3 config, 4 remote codec.
int run_cli(const std::vector<std::string>& args);

}  // namespace semcom
