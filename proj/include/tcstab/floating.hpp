#pragma once

namespace tcstab {

// Treats subnormal operands and results as zero on the calling thread.
// Far-field tails and Gaussian profiles underflow into the subnormal range,
// where arithmetic is dramatically slower on common hardware. Returns false
// where the platform offers no control.
bool enable_flush_to_zero();

}  // namespace tcstab
