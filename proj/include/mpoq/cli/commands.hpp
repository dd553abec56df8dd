#pragma once

namespace mpoq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitZeroProbability = 4;

/// Entry point of the `mpoq` tool: simulate, bench, verify.
int run(int argc, char** argv);

}  // namespace mpoq::cli
