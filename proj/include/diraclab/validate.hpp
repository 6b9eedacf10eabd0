#ifndef DIRACLAB_VALIDATE_HPP
#define DIRACLAB_VALIDATE_HPP

#include <ostream>

namespace diraclab {

// Deterministic self-check battery over the exact invariants of every
// module.  Prints one line per check and a final summary; the byte stream
// is identical from run to run and across thread counts.  Returns the
// number of failed checks (0 on a healthy build).
int run_validation(std::ostream& out);

}  // namespace diraclab

#endif
