#include "hampack/params.hpp"

#include <stdexcept>
#include <string>

namespace hampack {

Params derive_params(int k, int ell, int n, Divisibility div) {
  if (k < 3) throw std::invalid_argument("derive_params: k must be at least 3, got " + std::to_string(k));
  if (ell < 1) throw std::invalid_argument("derive_params: ell must be at least 1, got " + std::to_string(ell));
  if (n < k) throw std::invalid_argument("derive_params: n must be at least k");
  if (2 * ell >= k)
    throw std::invalid_argument("derive_params: ell=" + std::to_string(ell) + " with k=" + std::to_string(k) +
                                " has ell >= k/2; only ell < k/2 is supported");

  Params p;
  p.k = k;
  p.ell = ell;
  p.n = n;
  p.z = (k - ell + ell - 1) / ell;  // ceil((k-ell)/ell)
  p.q = p.ell * p.z;
  p.divisible_q = (n % p.q == 0);
  p.divisible_2q = (n % (2 * p.q) == 0);

  // k/2 < k-ell <= q < k and z >= 2 follow from ell < k/2; checked anyway.
  if (!(p.z >= 2 && 2 * (k - ell) > k && k - ell <= p.q && p.q < k))
    throw std::logic_error("derive_params: internal parameter invariant violated");

  if (p.divisible_q) {
    p.nu_q = n / p.q;
    p.nu_ell = n / p.ell;
  } else if (div == Divisibility::required) {
    throw std::invalid_argument("derive_params: n=" + std::to_string(n) + " is not divisible by the tuple width q=" +
                                std::to_string(p.q) + "; the digraph construction needs q | n (and prefers 2q=" +
                                std::to_string(2 * p.q) + " | n)");
  }
  return p;
}

}  // namespace hampack
