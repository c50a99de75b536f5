#pragma once

namespace wtm {

// Worker threads for OpenMP regions: WT_MINER_THREADS when set to a positive
// integer, otherwise the OpenMP default. Always 1 when built without OpenMP.
int worker_count();

}  // namespace wtm
