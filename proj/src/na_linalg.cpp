#include "bce/na_linalg.hpp"

namespace bce {

std::size_t f2_rank(std::vector<F2Vec> vecs) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    if (vecs[i].none()) continue;
    auto piv = vecs[i].find_first();
    for (std::size_t j = i + 1; j < vecs.size(); ++j)
      if (vecs[j].size() == vecs[i].size() && vecs[j].test(piv)) vecs[j] ^= vecs[i];
    ++rank;
  }
  return rank;
}

}  // namespace bce
