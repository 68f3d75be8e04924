#pragma once

#include <filesystem>
#include <vector>

namespace zarex::fixtures {

/// Recomputes every committed fixture from the brute-force oracles and
/// writes it under `dir`. Returns the files written.
std::vector<std::filesystem::path> regenerate(const std::filesystem::path& dir);

}  // namespace zarex::fixtures
