#pragma once

#include <functional>

#include "invx/spaces.hpp"

namespace invx {

/// Execution policy for the candidate-scan kernels. `automatic` picks the
/// parallel kernel when OpenMP is available.
enum class ScanPolicy { serial, parallel, automatic };

ScanPolicy default_scan_policy();
void set_default_scan_policy(ScanPolicy p);

/// Index of the first candidate in [0, n) satisfying pred, or -1. The
/// predicate must be pure; the parallel kernel returns the same index as the
/// serial one.
i64 scan_first_match(i64 n, const std::function<bool(i64)>& pred,
                     ScanPolicy policy = ScanPolicy::automatic);

/// True iff pred holds for every index in [0, n); parallel when allowed.
bool scan_all(i64 n, const std::function<bool(i64)>& pred,
              ScanPolicy policy = ScanPolicy::automatic);

}  // namespace invx
