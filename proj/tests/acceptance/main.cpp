#include <iostream>

#include "acceptance.hpp"

int main() {
  auto rs = ktypes::acceptance::run_all({});
  for (const auto& r : rs) std::cout << ktypes::acceptance::format_line(r) << '\n';
  int rc = ktypes::acceptance::exit_code(rs);
  std::cout << (rc == 0 ? "all criteria passed" : "acceptance FAILED") << '\n';
  return rc;
}
