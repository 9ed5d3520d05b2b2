#pragma once

#include <vector>

#include "lawvere/monad.hpp"
#include "lawvere/profunctor.hpp"

namespace lawvere {

/// The free finite-product completion PA cut to strings of length <= L.
/// A morphism (a_1..a_n) -> (b_1..b_m) is a function alpha: [m] -> [n] with
/// a morphism a_alpha(i) -> b_i of A for each i.
struct PCategory {
  CategoryPtr base;
  std::size_t max_length = 0;
  CategoryPtr category;
  std::vector<std::vector<std::size_t>> strings;  // per object
  std::vector<BaseFunction> index;                // per arrow: alpha
  std::vector<std::vector<std::size_t>> parts;    // per arrow: components in A
};

PCategory p_truncated(const CategoryPtr& a, std::size_t max_length);

/// PF : PA -/-> PB for F : A -/-> B, with
///   PF(b_1..b_n; a_1..a_m) = coproduct over alpha: [m] -> [n] of the product
///   over j in [m] of F(b_alpha(j), a_j),
/// source strings of length m and target strings of length n.
FiniteProfunctor p_on_prof(const FiniteProfunctor& f, const PCategory& pa, const PCategory& pb);

/// mu(n; k_1..k_m) = P1(n, k_1 + ... + k_m) = Set(k_1 + ... + k_m, n).
std::vector<BaseFunction> kleisli_mult(std::size_t n, const std::vector<std::size_t>& ks);
/// eta(k) = P1(k, 1) = Set(1, k).
std::vector<BaseFunction> kleisli_unit(std::size_t k);

/// f1 (+) f2 : m1 + m2 -> F(n1 + n2), i.e. m1 + m2 -> F n1 + F n2 followed by
/// the canonical map [F inl, F inr]. Morphisms are tuples n -> m of the theory.
TheoryMorphism oplus(const FinitaryMonadFragment& f, const TheoryMorphism& f1, const TheoryMorphism& f2);

/// The composite P1 -PF-> P^2 1 -mu-> P1 at every (j, n) with j <= j_bound and
/// n <= n_bound, computed as a coend over strings (k_1..k_m) with
/// m <= max_length and k_1 + ... + k_m <= j_bound, and compared with
/// Set(n, F j) through the evaluation map, including both actions. Each cell
/// is recomputed with max_length + 1 and must not change. The listed F[k]
/// must be closed under F of functions; otherwise structural_error.
Report verify_keyprop(const FinitaryMonadFragment& f, std::size_t j_bound, std::size_t n_bound,
                      std::size_t max_length = 1);

}  // namespace lawvere
