#pragma once

namespace handelman {

/// Selects between the OpenMP kernels and their serial reference versions.
/// Both produce identical results; the serial path exists for testing and
/// benchmarking.
enum class Exec { serial, parallel };

/// Sets the OpenMP worker count; values <= 0 keep the runtime default.
void set_thread_count(int threads);
int thread_count();

}  // namespace handelman
