#pragma once

namespace confid {

// Execution policy for the data-parallel kernels. Serial is the plain-loop
// reference implementation; Parallel uses OpenMP when available. Results are
// required to be bit-identical between the two and for any thread count.
enum class Exec { Serial, Parallel };

}  // namespace confid
