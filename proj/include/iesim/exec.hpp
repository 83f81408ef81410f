#pragma once

namespace iesim {

// Execution policy for the data-parallel kernels (grid sweeps, Monte Carlo
// sharding). Serial is the reference path; results must match bit for bit.
enum class Exec { serial, parallel };

}  // namespace iesim
