// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "quadfuse/app.hpp"

int main(int argc, char** argv) {
  return quadfuse::run_command_line(argc, argv, std::cout, std::cerr);
}
