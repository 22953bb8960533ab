#pragma once

// Kernels with a parallel path take an Exec; Serial is the reference loop.

namespace pseudoreg {

enum class Exec { Serial, Parallel };

}  // namespace pseudoreg
