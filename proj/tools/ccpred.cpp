//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include "ccpred/cli/cli.h"
#include "ccpred/core/runtime.h"

int main(int argc, char **argv) {
  ccpred::tune_allocator();
  return ccpred::cli::run(argc, argv, std::cout, std::cerr);
}
