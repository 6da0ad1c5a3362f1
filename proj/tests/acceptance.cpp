// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>

#include "gammac/acceptance.hpp"

int main() {
  int failed = 0;
  for (int id = 1; id <= gammac::acceptance_criterion_count(); ++id) {
    const auto r = gammac::run_acceptance_criterion(id);
    std::printf("%s %2d %s: %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.detail.c_str(),
                r.seconds);
    std::fflush(stdout);
    failed += !r.pass;
  }
  std::printf("%d/%d criteria passed\n", gammac::acceptance_criterion_count() - failed,
              gammac::acceptance_criterion_count());
  return failed == 0 ? 0 : 1;
}
