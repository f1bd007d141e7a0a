#include "invx/term_scan.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace invx {

namespace {
ScanPolicy g_default = ScanPolicy::automatic;

bool use_parallel(ScanPolicy p) {
  if (p == ScanPolicy::automatic) p = g_default;
#ifdef _OPENMP
  return p != ScanPolicy::serial;
#else
  (void)p;
  return false;
#endif
}
}  // namespace

ScanPolicy default_scan_policy() { return g_default; }
void set_default_scan_policy(ScanPolicy p) { g_default = p; }

i64 scan_first_match(i64 n, const std::function<bool(i64)>& pred,
                     ScanPolicy policy) {
  if (!use_parallel(policy)) {
    for (i64 i = 0; i < n; ++i)
      if (pred(i)) return i;
    return -1;
  }
  i64 best = n;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best)
  for (i64 i = 0; i < n; ++i) {
    if (i < best && pred(i)) best = i;
  }
#endif
  return best == n ? -1 : best;
}

bool scan_all(i64 n, const std::function<bool(i64)>& pred, ScanPolicy policy) {
  if (!use_parallel(policy)) {
    for (i64 i = 0; i < n; ++i)
      if (!pred(i)) return false;
    return true;
  }
  bool ok = true;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) reduction(&& : ok)
  for (i64 i = 0; i < n; ++i) {
    if (ok && !pred(i)) ok = false;
  }
#endif
  return ok;
}

}  // namespace invx
