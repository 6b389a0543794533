#include <cstdio>
#include <cstdlib>
#include <string>

#include "revspy/acceptance.hpp"

// One PASS/FAIL line per criterion; pass criterion numbers to run a subset.
int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= 11; ++i) which.push_back(i);
  bool all = true;
  for (int n : which) {
    auto res = revspy::run_criterion(n);
    all &= res.pass;
    std::printf("%s criterion %d (%s) [%.1fs] :: %s\n", res.pass ? "PASS" : "FAIL", n, res.name.c_str(), res.seconds,
                res.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
