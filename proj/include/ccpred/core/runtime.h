//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_CORE_RUNTIME_H_
#define CCPRED_CORE_RUNTIME_H_

namespace ccpred {

// Keeps freed tape buffers in the heap instead of returning them to the OS
// after every step; training spends a third of its time in mmap/munmap
// otherwise. Process-wide, so only entry points call it. No-op off glibc.
void tune_allocator();

}  // namespace ccpred

#endif  // CCPRED_CORE_RUNTIME_H_
