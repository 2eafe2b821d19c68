//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "ccpred/core/runtime.h"

int main(int argc, char **argv) {
  ccpred::tune_allocator();
  doctest::Context context(argc, argv);
  return context.run();
}
