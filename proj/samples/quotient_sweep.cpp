// Random subsets of F_q^d of growing size: when does the quotient set of distances fill F_q?

#include <iostream>

#include "qdist/qdist.hpp"

int main(int argc, char** argv) {
  const unsigned p = argc > 1 ? static_cast<unsigned>(std::stoul(argv[1])) : 5;
  const unsigned d = argc > 2 ? static_cast<unsigned>(std::stoul(argv[2])) : 2;
  const auto field = qdist::Field::make(p);
  const qdist::StandardForm form(field, d, field->one());
  const std::uint64_t ambient = qdist::PointSet(field, d).ambient_size();

  std::cout << "size,quotient_size,min_W,theorem_bound_met\n";
  for (std::uint64_t size = 1; size <= ambient; size += std::max<std::uint64_t>(1, ambient / 16)) {
    const auto e = qdist::random_subset(field, d, size, qdist::derive_seed(7, size));
    const qdist::BoundEvaluator ev(e, form);
    std::uint64_t min_w = UINT64_MAX;
    bool met = true;
    for (const auto& rep : ev.check_all()) {
      min_w = std::min(min_w, rep.W);
      met = met && rep.pass();
    }
    std::cout << size << ',' << qdist::quotient_set(e, form).size() << ',' << min_w << ',' << (met ? "yes" : "no")
              << '\n';
  }
}
