#pragma once

namespace bladeseg {

// Caps OpenMP worker count for all parallel kernels. Results are
// bit-identical for any value, including 1.
void set_thread_count(int n);

int thread_count();

}  // namespace bladeseg
