#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "lawvere/term.hpp"

namespace lawvere {

/// A category with finitely many objects and morphisms, given by an explicit
/// composition table. Morphism i < object_count() is the identity on object i.
class FiniteCategory {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Arrow {
    std::string name;
    std::size_t source = 0;
    std::size_t target = 0;
  };

  /// `arrows` lists every morphism with identities first; `table[g * n + f]`
  /// is g o f, or npos when target(f) != source(g). Category laws are checked.
  FiniteCategory(std::vector<std::string> objects, std::vector<Arrow> arrows, std::vector<std::size_t> table);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::string& object(std::size_t i) const { return objects_.at(i); }
  const Arrow& arrow(std::size_t i) const { return arrows_.at(i); }
  std::size_t source(std::size_t f) const { return arrows_[f].source; }
  std::size_t target(std::size_t f) const { return arrows_[f].target; }
  std::size_t identity(std::size_t object) const { return object; }
  bool is_identity(std::size_t f) const { return f < objects_.size(); }

  /// g o f; throws unless target(f) == source(g).
  std::size_t compose(std::size_t g, std::size_t f) const;
  /// Morphisms a -> b.
  const std::vector<std::size_t>& hom(std::size_t a, std::size_t b) const { return homs_[a * objects_.size() + b]; }

  std::size_t find_object(const std::string& name) const;
  std::size_t find_arrow(const std::string& name) const;

 private:
  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<std::size_t> table_;
  std::vector<std::vector<std::size_t>> homs_;
};

using CategoryPtr = std::shared_ptr<const FiniteCategory>;

struct Composite {
  std::string g, f, result;  // g o f = result
};

/// Builds a category from named non-identity arrows and the composites of
/// every composable non-identity pair. Identities are named "id_<object>".
CategoryPtr make_category(const std::vector<std::string>& objects, const std::vector<FiniteCategory::Arrow>& arrows,
                          const std::vector<Composite>& composites);

/// A functor between finite categories, checked at construction.
struct FiniteFunctor {
  CategoryPtr source;
  CategoryPtr target;
  std::vector<std::size_t> on_objects;
  std::vector<std::size_t> on_arrows;

  FiniteFunctor(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> on_objects,
                std::vector<std::size_t> on_arrows);
};

FiniteFunctor compose(const FiniteFunctor& g, const FiniteFunctor& f);
FiniteFunctor identity_functor(CategoryPtr c);

/// All functors C -> D (backtracking); intended for tiny categories.
std::vector<FiniteFunctor> all_functors(const CategoryPtr& c, const CategoryPtr& d, std::size_t limit = 10000);

namespace categories {
CategoryPtr discrete(std::size_t n);
/// The poset 0 < 1 < ... < n-1; chain(3) is the free category on a->b->c.
CategoryPtr chain(std::size_t n);
/// One object, morphisms Z/n.
CategoryPtr cyclic_group(std::size_t n);
/// One object, morphisms {1, e} with e e = e.
CategoryPtr idempotent();
/// Two objects and two parallel arrows.
CategoryPtr parallel_pair();
/// Two objects and mutually inverse arrows between them.
CategoryPtr iso_pair();
/// Random poset on n objects whose order extends the index order.
CategoryPtr random_poset(std::size_t n, std::mt19937_64& rng);
/// Random pick among the small categories above, at most three objects and at
/// most two non-identity arrows per hom-set.
CategoryPtr random_small(std::mt19937_64& rng);
/// Full subcategory of F^op on the given arities: a morphism n -> m is a
/// function [m] -> [n].
CategoryPtr fop(const std::vector<std::size_t>& arities);
}  // namespace categories

struct BaseFunction;
/// The function [m] -> [n] underlying each arrow n -> m of categories::fop,
/// indexed like its arrows.
std::vector<BaseFunction> fop_functions(const std::vector<std::size_t>& arities);

/// {"schemaVersion", "objects", "morphisms": [{name, source, target}],
///  "compose": [[g, f, g o f], ...]}; identities are implicit.
nlohmann::json category_to_json(const FiniteCategory& c);
CategoryPtr category_from_json(const nlohmann::json& j);

}  // namespace lawvere
