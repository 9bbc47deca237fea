// Classification table: conjugacy classes and subgroup counts of H_q at
// small index, with the inclusion-exclusion check column.

#include <iomanip>
#include <iostream>

#include "qboid/qboid.hpp"

int main() {
  std::cout << std::setw(3) << "q" << std::setw(4) << "n" << std::setw(9) << "classes" << std::setw(11)
            << "subgroups" << std::setw(13) << "transitive" << std::setw(13) << "recurrence" << "\n";
  for (int q : {3, 4, 5, 6}) {
    for (int n = 1; n <= 7; ++n) {
      const auto r = qboid::all_classes(q, n);
      std::cout << std::setw(3) << q << std::setw(4) << n << std::setw(9) << r.class_count << std::setw(11)
                << r.subgroup_count << std::setw(13) << r.transitive_pair_count << std::setw(13) << r.hall_count
                << (r.hall_consistent ? "" : "  MISMATCH") << "\n";
    }
    std::cout << "\n";
  }
  return 0;
}
