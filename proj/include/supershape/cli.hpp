#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace supershape::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitScorerUnreachable = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitInterrupted = 130;

// Subcommands: evolve, render, views. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace supershape::cli
